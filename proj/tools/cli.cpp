#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "netfar/generator.hpp"
#include "netfar/index.hpp"
#include "netfar/instrumentation.hpp"
#include "netfar/oracle.hpp"
#include "netfar/verify.hpp"

namespace netfar::cli {

namespace {

using nlohmann::ordered_json;

// 12 significant digits, so answers within the tie tolerance print alike.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  if (std::strtod(buf, nullptr) == 0.0) return "0";
  return buf;
}

double rounded(double x) { return std::strtod(fmt(x).c_str(), nullptr); }

struct PointForm {
  std::string u, v;
  double lambda;
};

PointForm point_form(const Network& net, const NetworkPoint& p) {
  const auto [e, lambda] = net.display_form(p);
  return {net.name(net.edge(e).u), net.name(net.edge(e).v), lambda};
}

ordered_json point_json(const Network& net, const NetworkPoint& p) {
  const PointForm f = point_form(net, p);
  return {{"u", f.u}, {"v", f.v}, {"lambda", rounded(f.lambda)}};
}

std::string class_name(NetworkClass c) { return std::string(to_string(c)); }

struct Failure {
  int code;
  std::string message;
};

Network read_network(const std::string& path) {
  try {
    return load_network(path);
  } catch (const Error& e) {
    throw Failure{kParseFailure, e.what()};
  }
}

NetworkClass supported_or_fail(const Network& net, bool oracle) {
  const NetworkClass cls = classify(net);
  if (cls == NetworkClass::General && !oracle) {
    throw Failure{kUnsupportedClass, "network class 'general' is only supported with --oracle"};
  }
  return cls;
}

NetworkClass parse_class(const std::string& s) {
  const auto cls = parse_network_class(s);
  if (!cls || *cls == NetworkClass::General) throw Failure{kUnsupportedClass, "unsupported class '" + s + "'"};
  return *cls;
}

struct Options {
  bool json = false;
  bool oracle = false;
  std::string file;
  std::vector<std::string> edge;
  double lambda = 0.0;
  std::string mode = "ecc";
  std::size_t samples = 4;
  std::string cls;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double cycle_fraction = 0.5;
  std::size_t max_n = 120;
  std::string sizes = "256,512,1024,2048,4096,8192,16384";
  std::size_t queries = 1000;
};

int cmd_classify(const Options& o, std::ostream& out) {
  const Network net = read_network(o.file);
  const NetworkClass cls = classify(net);
  const BagCounts bags = count_bags(net);
  if (o.json) {
    ordered_json j{{"class", class_name(cls)},
                   {"n", net.vertex_count()},
                   {"m", net.edge_count()},
                   {"bags", bags.bags},
                   {"hinges", bags.hinges}};
    if (cls == NetworkClass::General) j["note"] = "only oracle queries available";
    out << j.dump() << "\n";
  } else {
    out << "class: " << class_name(cls) << "\nn: " << net.vertex_count() << "\nm: " << net.edge_count()
        << "\nbags: " << bags.bags << "\nhinges: " << bags.hinges << "\n";
    if (cls == NetworkClass::General) out << "note: only oracle queries available\n";
  }
  return kOk;
}

int cmd_query(const Options& o, std::ostream& out) {
  Network net = read_network(o.file);
  supported_or_fail(net, o.oracle);
  NetworkPoint q;
  try {
    q = canonical_point(net, o.edge[0], o.edge[1], o.lambda);
  } catch (const InvalidPointError& e) {
    throw Failure{kInvalidQuery, e.what()};
  }
  std::optional<FarthestIndex> index;
  if (!o.oracle) index.emplace(std::move(net));
  const Network& g = index ? index->network() : net;
  ordered_json j{{"mode", o.mode}, {"query", point_json(g, q)}};
  std::ostringstream text;
  if (o.mode == "ecc") {
    const double ecc = index ? index->eccentricity(q) : oracle::eccentricity(g, q);
    j["eccentricity"] = rounded(ecc);
    text << "eccentricity: " << fmt(ecc) << "\n";
  } else if (o.mode == "count") {
    const std::size_t count = index ? index->count_farthest(q) : oracle::farthest_points(g, q).points.size();
    j["count"] = count;
    text << "count: " << count << "\n";
  } else {
    const FarthestSet set = index ? index->farthest(q) : oracle::farthest_points(g, q);
    j["eccentricity"] = rounded(set.eccentricity);
    ordered_json pts = ordered_json::array();
    text << "eccentricity: " << fmt(set.eccentricity) << "\nfarthest points: " << set.points.size() << "\n";
    for (const NetworkPoint& p : set.points) {
      const PointForm f = point_form(g, p);
      ordered_json pj = point_json(g, p);
      pj["distance"] = rounded(set.eccentricity);
      pts.push_back(pj);
      text << f.u << " " << f.v << " " << fmt(f.lambda) << " " << fmt(set.eccentricity) << "\n";
    }
    j["points"] = pts;
  }
  out << (o.json ? j.dump() + "\n" : text.str());
  return kOk;
}

int cmd_heatmap(const Options& o, std::ostream& out) {
  Network net = read_network(o.file);
  supported_or_fail(net, o.oracle);
  std::vector<std::vector<ProfileSample>> profiles;
  std::optional<FarthestIndex> index;
  if (!o.oracle) {
    index.emplace(std::move(net));
    profiles = index->profiles(o.samples);
  } else {
    profiles.resize(net.edge_count());
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      for (std::size_t k = 0; k <= o.samples + 1; ++k) {
        const double lambda = static_cast<double>(k) / static_cast<double>(o.samples + 1);
        profiles[e].push_back({lambda, oracle::eccentricity(net, net.point(e, lambda))});
      }
    }
  }
  const Network& g = index ? index->network() : net;
  out << "u,v,lambda,ecc\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (const ProfileSample& s : profiles[e]) {
      out << g.name(g.edge(e).u) << "," << g.name(g.edge(e).v) << "," << fmt(s.lambda) << "," << fmt(s.eccentricity)
          << "\n";
    }
  }
  return kOk;
}

int cmd_centers(const Options& o, std::ostream& out) {
  Network net = read_network(o.file);
  supported_or_fail(net, o.oracle);
  std::optional<FarthestIndex> index;
  if (!o.oracle) index.emplace(std::move(net));
  const Network& g = index ? index->network() : net;
  const CenterSet c = index ? index->centers() : oracle::center_set(g);
  if (o.json) {
    ordered_json vs = ordered_json::array(), segs = ordered_json::array();
    for (VertexId v : c.vertices) vs.push_back(g.name(v));
    for (const CenterSegment& s : c.segments) {
      segs.push_back({{"u", g.name(g.edge(s.edge).u)},
                      {"v", g.name(g.edge(s.edge).v)},
                      {"lambda0", rounded(s.lambda0)},
                      {"lambda1", rounded(s.lambda1)}});
    }
    out << ordered_json{{"min_eccentricity", rounded(c.min_eccentricity)}, {"vertices", vs}, {"segments", segs}}.dump()
        << "\n";
  } else {
    out << "min_eccentricity: " << fmt(c.min_eccentricity) << "\n";
    for (VertexId v : c.vertices) out << "vertex " << g.name(v) << "\n";
    for (const CenterSegment& s : c.segments) {
      out << "segment " << g.name(g.edge(s.edge).u) << " " << g.name(g.edge(s.edge).v) << " " << fmt(s.lambda0)
          << " " << fmt(s.lambda1) << "\n";
    }
  }
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  std::vector<NetworkClass> classes;
  if (o.cls == "all") {
    classes = {NetworkClass::Tree, NetworkClass::Cycle, NetworkClass::UniCyclic, NetworkClass::Cactus};
  } else {
    classes = {parse_class(o.cls)};
  }
  bool ok = true;
  ordered_json runs = ordered_json::array();
  for (NetworkClass cls : classes) {
    verify::CheckOptions opts;
    opts.cls = cls;
    opts.trials = o.trials;
    opts.seed = o.seed;
    opts.max_n = o.max_n;
    opts.cycle_fraction = o.cycle_fraction;
    const verify::CheckReport report = verify::run_check(opts);
    ok = ok && report.failed == 0;
    ordered_json failures = ordered_json::array();
    if (!o.json) {
      out << "check " << class_name(cls) << ": " << o.trials << " trials, seed " << o.seed << "\n"
          << "passed: " << report.passed << "\nfailed: " << report.failed << "\n";
    }
    for (const verify::CheckFailure& f : report.failures) {
      failures.push_back({{"index", f.index}, {"instance_seed", f.instance_seed}, {"n", f.n}, {"what", f.what}});
      if (!o.json) {
        out << "FAIL trial " << f.index << " (n=" << f.n << "): " << f.what << "\n"
            << "reproduce: class=" << class_name(cls) << " seed=" << o.seed << " index=" << f.index
            << " instance_seed=" << f.instance_seed << "\n";
      }
    }
    runs.push_back({{"class", class_name(cls)},
                    {"trials", o.trials},
                    {"seed", o.seed},
                    {"passed", report.passed},
                    {"failed", report.failed},
                    {"failures", failures}});
  }
  if (o.json) out << (runs.size() == 1 ? runs[0] : runs).dump() << "\n";
  return ok ? kOk : kCheckFailure;
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0' || v < 3) throw Failure{kParseFailure, "bad size '" + item + "'"};
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty() || !std::is_sorted(sizes.begin(), sizes.end()))
    throw Failure{kParseFailure, "sizes must be a non-empty ascending list"};
  return sizes;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const NetworkClass cls = parse_class(o.cls);
  const std::vector<std::size_t> sizes = parse_sizes(o.sizes);
  ordered_json rows = ordered_json::array();
  std::vector<double> ratios;
  if (!o.json) {
    out << "class " << class_name(cls) << ", seed " << o.seed << ", " << o.queries << " queries per size\n";
    out << "       n        m   build_ms   build_steps  steps/n  ecc_steps  far_steps  far_cmp  bag_visits\n";
  }
  for (std::size_t n : sizes) {
    const Network net = generate_network(cls, n, o.seed, o.cycle_fraction);
    metrics::reset();
    const auto t0 = std::chrono::steady_clock::now();
    const FarthestIndex index(net);
    const auto t1 = std::chrono::steady_clock::now();
    const std::uint64_t build = metrics::counters().build_steps;
    Rng rng(o.seed ^ n);
    std::vector<NetworkPoint> qs;
    for (std::size_t k = 0; k < o.queries; ++k) qs.push_back(random_point(net, rng));
    metrics::reset();
    for (const NetworkPoint& q : qs) index.eccentricity(q);
    const metrics::Counters ecc = metrics::counters();
    metrics::reset();
    for (const NetworkPoint& q : qs) index.farthest(q);
    const metrics::Counters far = metrics::counters();
    const double per = static_cast<double>(std::max<std::size_t>(o.queries, 1));
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double ratio = static_cast<double>(build) / static_cast<double>(net.vertex_count());
    ratios.push_back(ratio);
    const double ecc_steps = (ecc.query_steps + ecc.comparisons) / per;
    const double far_steps = (far.query_steps + far.comparisons) / per;
    const double far_cmp = far.comparisons / per;
    const double visits = far.bag_visits / per;
    rows.push_back({{"n", net.vertex_count()},
                    {"m", net.edge_count()},
                    {"build_ms", rounded(ms)},
                    {"build_steps", build},
                    {"steps_per_n", rounded(ratio)},
                    {"ecc_query_steps", rounded(ecc_steps)},
                    {"farthest_query_steps", rounded(far_steps)},
                    {"farthest_comparisons", rounded(far_cmp)},
                    {"bag_visits", rounded(visits)}});
    if (!o.json) {
      char line[200];
      std::snprintf(line, sizeof line, "%8zu %8zu %10.3f %13llu %8.2f %10.2f %10.2f %8.2f %11.2f\n",
                    net.vertex_count(), net.edge_count(), ms, static_cast<unsigned long long>(build), ratio,
                    ecc_steps, far_steps, far_cmp, visits);
      out << line;
    }
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double spread = *hi / *lo;
  if (o.json) {
    out << ordered_json{{"class", class_name(cls)}, {"seed", o.seed}, {"rows", rows},
                        {"steps_per_n_max_over_min", rounded(spread)}}
               .dump()
        << "\n";
  } else {
    out << "steps/n max/min: " << fmt(spread) << "\n";
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Eccentricity and farthest-point queries on networks", "netfar"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Structured output");

  auto* classify = app.add_subcommand("classify", "Report the class and decomposition size of a network");
  classify->add_option("file", o.file, "Network file")->required();

  auto* query = app.add_subcommand("query", "Eccentricity, farthest points, or their count at a point");
  query->add_option("file", o.file, "Network file")->required();
  query->add_option("--edge", o.edge, "Edge endpoints u v")->expected(2)->required();
  query->add_option("--lambda", o.lambda, "Position from u")->required();
  query->add_option("--mode", o.mode, "ecc, farthest or count")->check(CLI::IsMember({"ecc", "farthest", "count"}));
  query->add_flag("--oracle", o.oracle, "Answer with the brute-force oracle");

  auto* heatmap = app.add_subcommand("heatmap", "Eccentricity samples along every edge as CSV");
  heatmap->add_option("file", o.file, "Network file")->required();
  heatmap->add_option("--samples", o.samples, "Uniform samples per edge")->check(CLI::PositiveNumber);
  heatmap->add_flag("--oracle", o.oracle, "Answer with the brute-force oracle");

  auto* centers = app.add_subcommand("centers", "Continuous set of absolute centers");
  centers->add_option("file", o.file, "Network file")->required();
  centers->add_flag("--oracle", o.oracle, "Answer with the brute-force oracle");

  auto* check = app.add_subcommand("check", "Compare the structures with the oracle on random networks");
  check->add_option("class", o.cls, "tree, cycle, unicyclic, cactus or all")->required();
  check->add_option("trials,--trials", o.trials, "Number of networks")->check(CLI::PositiveNumber);
  check->add_option("seed,--seed", o.seed, "Seed");
  check->add_option("--cycle-fraction", o.cycle_fraction, "Share of cycle bags")->check(CLI::Range(0.0, 1.0));
  check->add_option("--max-n", o.max_n, "Largest network size")->check(CLI::Range(8, 1000));

  auto* bench = app.add_subcommand("bench", "Build and query operation counts over growing sizes");
  bench->add_option("class", o.cls, "tree, cycle, unicyclic or cactus")->required();
  bench->add_option("--sizes", o.sizes, "Ascending comma-separated sizes");
  bench->add_option("--seed", o.seed, "Seed");
  bench->add_option("--queries", o.queries, "Random queries per size");
  bench->add_option("--cycle-fraction", o.cycle_fraction, "Share of cycle bags")->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseFailure;
  }

  try {
    if (*classify) return cmd_classify(o, out);
    if (*query) return cmd_query(o, out);
    if (*heatmap) return cmd_heatmap(o, out);
    if (*centers) return cmd_centers(o, out);
    if (*check) return cmd_check(o, out);
    if (*bench) return cmd_bench(o, out);
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const ClassError& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupportedClass;
  } catch (const InvalidPointError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidQuery;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kParseFailure;
  }
  return kOk;
}

}  // namespace netfar::cli
