#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "coxshadow/analysis.hpp"
#include "coxshadow/conetype.hpp"
#include "coxshadow/oracle.hpp"
#include "coxshadow/render.hpp"
#include "coxshadow/shi.hpp"
#include "coxshadow/verify.hpp"

using namespace coxshadow;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kUsage = 2;
constexpr int kInconclusive = 3;

struct Globals {
  std::string system;
  std::string cache_dir;
  std::size_t max_states = 5'000'000;
  std::size_t max_ball = 2'000'000;
  int jobs = 1;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

bool wants_csv(const std::string& format, const std::string& path) {
  if (!format.empty()) return format == "csv";
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

Analysis analyse(const Globals& g) {
  AnalysisOptions opts;
  opts.max_states = g.max_states;
  if (!g.cache_dir.empty()) opts.cache_dir = g.cache_dir;
  return Analysis(parse_system(g.system), opts);
}

ordered_json exact(const Field& f, const RootVec& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(f.to_string(x));
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  return out + "\"";
}

int cmd_info(const Globals& g) {
  CoxeterSystem sys = parse_system(g.system);
  CoxeterGroup group(sys);
  const Field& f = group.field();
  std::ostringstream os;
  os << "system     " << sys.canonical_text() << "\n";
  os << "rank       " << sys.rank() << "\n";
  os << "bonds     ";
  for (int i = 0; i < sys.rank(); ++i)
    for (int j = i + 1; j < sys.rank(); ++j)
      os << " m" << i + 1 << j + 1 << "=" << (sys.infinite_bond(i, j) ? "inf" : std::to_string(sys.bond(i, j)));
  os << "\n";
  os << "field      Q(c), c = 2cos(pi/" << f.conductor() << "), degree " << f.degree()
     << ", minimal polynomial " << f.minimal_polynomial_string() << "\n";
  if (!g.cache_dir.empty()) {
    AutomatonCache cache(g.cache_dir);
    if (auto bh = cache.load(sys, "brink-howlett")) {
      std::size_t sigma = 0;
      for (int q = 0; q < bh->size(); ++q)
        for (int i : bh->meta(q)) sigma = std::max<std::size_t>(sigma, i + 1);
      os << "small roots " << sigma << " (cached automaton, " << bh->size() << " states)\n";
    }
  }
  emit("", os.str());
  return 0;
}

int cmd_roots(const Globals& g, const std::string& format, const std::string& out) {
  CoxeterGroup group(parse_system(g.system));
  SmallRoots sigma = small_roots(group);
  const Field& f = group.field();
  if (wants_csv(format, out)) {
    std::ostringstream os;
    os << "index,depth";
    for (int s = 0; s < group.rank(); ++s) os << ",a" << s + 1;
    os << "\n";
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      os << i << ',' << sigma.depth(i);
      for (const auto& x : sigma[i]) os << ',' << csv_quote(f.to_string(x));
      os << "\n";
    }
    emit(out, os.str());
    return 0;
  }
  ordered_json j;
  j["system"] = group.system().canonical_text();
  j["field"] = {{"c", "2cos(pi/" + std::to_string(f.conductor()) + ")"},
                {"degree", f.degree()},
                {"minimal_polynomial", f.minimal_polynomial_string()}};
  ordered_json roots = ordered_json::array();
  for (std::size_t i = 0; i < sigma.size(); ++i)
    roots.push_back({{"index", i}, {"depth", sigma.depth(i)}, {"coordinates", exact(f, sigma[i])}});
  j["roots"] = roots;
  emit(out, j.dump(2) + "\n");
  return 0;
}

int cmd_automaton(const Globals& g, const std::string& kind, const std::string& dot,
                  const std::string& json_path) {
  Analysis a = analyse(g);
  const Dfa& d = kind == "bh" ? a.bh() : a.minimal();
  if (!dot.empty()) emit(dot, export_dot(d));
  if (!json_path.empty()) emit(json_path, export_json(d));
  if (dot.empty() && json_path.empty()) std::cout << d.kind() << ": " << d.size() << " states\n";
  return 0;
}

// Every part has its minimum in M; sizes count members inside the ball.
int cmd_shi(const Globals& g, int R, const std::string& format, const std::string& out) {
  Analysis a = analyse(g);
  ElementBall ball(a.group(), R, g.max_ball);
  std::map<std::string, std::size_t> sizes;
  for (const auto& p : shi_parts(a.group(), a.sigma(), ball)) sizes[p.key] = p.members.size();
  struct Row {
    std::string key;
    const Elt* min;
    std::size_t size;
  };
  std::vector<Row> rows;
  for (const auto& m : a.M()) {
    std::string key = signature_string(shi_signature(a.group(), a.sigma(), m));
    auto it = sizes.find(key);
    rows.push_back({key, &m, it == sizes.end() ? 0 : it->second});
  }
  if (wants_csv(format, out)) {
    std::ostringstream os;
    os << "signature,minimum,length,size\n";
    for (const auto& r : rows)
      os << csv_quote(r.key) << ',' << format_word(r.min->word) << ',' << r.min->len << ',' << r.size << "\n";
    emit(out, os.str());
  } else {
    ordered_json j;
    j["system"] = a.group().system().canonical_text();
    j["radius"] = R;
    j["small_roots"] = a.sigma().size();
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
      arr.push_back({{"signature", r.key},
                     {"minimum", format_word(r.min->word)},
                     {"length", r.min->len},
                     {"size", r.size}});
    j["parts"] = arr;
    emit(out, j.dump(2) + "\n");
  }
  std::size_t met = 0;
  for (const auto& r : rows) met += r.size > 0;
  if (!out.empty() && out != "-") std::cout << rows.size() << " parts, " << met << " meet the ball\n";
  return 0;
}

int cmd_cones(const Globals& g, int R, const std::string& format, const std::string& out,
              const std::string& dot) {
  Analysis a = analyse(g);
  ElementBall ball(a.group(), R, g.max_ball);
  const Dfa& mn = a.minimal();
  std::vector<std::size_t> sizes(mn.size(), 0);
  for (const auto& e : ball.elements()) ++sizes[cone_state(mn, e)];
  const auto& gs = a.gates();
  if (!dot.empty()) {
    std::vector<std::string> labels;
    for (int q = 0; q < mn.size(); ++q) labels.push_back(format_word(gs[q].word));
    emit(dot, export_dot(mn, labels));
  }
  if (wants_csv(format, out)) {
    std::ostringstream os;
    os << "state,gate,length,size\n";
    for (int q = 0; q < mn.size(); ++q)
      os << q << ',' << format_word(gs[q].word) << ',' << gs[q].len << ',' << sizes[q] << "\n";
    emit(out, os.str());
  } else {
    ordered_json j;
    j["system"] = a.group().system().canonical_text();
    j["radius"] = R;
    ordered_json arr = ordered_json::array();
    for (int q = 0; q < mn.size(); ++q)
      arr.push_back({{"state", q}, {"gate", format_word(gs[q].word)}, {"length", gs[q].len}, {"size", sizes[q]}});
    j["states"] = arr;
    emit(out, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_growth(const Globals& g, int n, const std::string& kind, const std::string& out) {
  Analysis a = analyse(g);
  emit(out, growth_csv(word_growth(kind == "bh" ? a.bh() : a.minimal(), n)));
  return 0;
}

int cmd_verify(const Globals& g, const VerifyOptions& base, const std::string& suite,
               const std::string& report_path, bool json) {
  Analysis a = analyse(g);
  VerifyOptions opts = base;
  opts.max_ball = g.max_ball;
  opts.jobs = g.jobs;
  Report r = verify(a, parse_suite(suite), opts);
  if (!report_path.empty()) emit(report_path, r.to_json());
  std::cout << (json ? r.to_json() : r.to_text());
  return r.exit_code();
}

int cmd_render(const Globals& g, int R, const std::string& coloring, const std::string& out) {
  Analysis a = analyse(g);
  Rendering img = render_parts(a, R, coloring == "cone" ? Coloring::Cone : Coloring::Shi);
  emit(out, img.svg);
  if (!out.empty() && out != "-") std::cout << img.alcoves << " alcoves, " << img.parts << " parts\n";
  return 0;
}

int cmd_export(const Globals& g, int R, const std::string& out) {
  CoxeterGroup group(parse_system(g.system));
  ElementBall ball(group, R, g.max_ball);
  const Field& f = group.field();
  ordered_json j;
  j["system"] = group.system().canonical_text();
  j["radius"] = R;
  ordered_json arr = ordered_json::array();
  for (const auto& e : ball.elements()) {
    ordered_json inv = ordered_json::array();
    for (const auto& r : group.inversion_roots(e)) inv.push_back(exact(f, r));
    arr.push_back({{"word", format_word(e.word)}, {"length", e.len}, {"inversions", inv}});
  }
  j["elements"] = arr;
  emit(out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shi parts, cone types and reduced-word automata of Coxeter groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--cache-dir", g.cache_dir, "Directory for cached automata");
  app.add_option("--max-states", g.max_states, "Automaton state cap")->check(CLI::PositiveNumber);
  app.add_option("--max-ball", g.max_ball, "Ball size cap")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Concurrent verify suites")->check(CLI::PositiveNumber);

  auto with_system = [&](CLI::App* sub) {
    sub->add_option("-s,--system", g.system, "Preset name or 'rank N; m i j = v; ...'")->required();
    return sub;
  };

  auto* info = with_system(app.add_subcommand("info", "Rank, bonds and field of a system"));

  std::string format, out, dot, json_path, kind = "minimal", coloring = "shi", suite = "all", report_path;
  int radius = 8, length = 10;
  bool json = false;
  VerifyOptions vopts;

  auto* roots = with_system(app.add_subcommand("roots", "Small roots with exact coordinates"));
  roots->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  roots->add_option("-o,--out", out);

  auto* automaton = with_system(app.add_subcommand("automaton", "Reduced-word automaton"));
  automaton->add_option("--kind", kind)->check(CLI::IsMember({"bh", "minimal"}));
  automaton->add_option("--dot", dot);
  automaton->add_option("--json", json_path);

  auto* shi = with_system(app.add_subcommand("shi", "Shi parts and their smallest elements"));
  shi->add_option("--ball", radius, "Ball radius")->check(CLI::NonNegativeNumber);
  shi->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  shi->add_option("-o,--out", out);

  auto* cones = with_system(app.add_subcommand("cones", "Cone type parts and gates"));
  cones->add_option("--ball", radius, "Ball radius")->check(CLI::NonNegativeNumber);
  cones->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  cones->add_option("-o,--out", out);
  cones->add_option("--dot", dot, "Minimal automaton labelled by gates");

  auto* growth = with_system(app.add_subcommand("growth", "Reduced words per length, CSV"));
  growth->add_option("-n,--length", length)->check(CLI::NonNegativeNumber);
  growth->add_option("--kind", kind)->check(CLI::IsMember({"bh", "minimal"}));
  growth->add_option("-o,--out", out);

  auto* verify_cmd = with_system(app.add_subcommand("verify", "Property suites against the oracle"));
  verify_cmd->add_option("--radius", vopts.radius)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--suite", suite)
      ->check(CLI::IsMember({"shi", "cone", "shadow", "bipodality", "automata", "independence", "all"}));
  verify_cmd->add_option("--report", report_path, "JSON report file");
  verify_cmd->add_option("--margin", vopts.margin, "Starting cone partition margin");
  verify_cmd->add_option("--root-depth", vopts.root_depth, "Oracle small-root depth");
  verify_cmd->add_flag("--json", json, "JSON on stdout");

  auto* render = with_system(app.add_subcommand("render", "SVG of parts, affine rank 3 only"));
  render->add_option("--ball", radius)->check(CLI::NonNegativeNumber);
  render->add_option("--coloring", coloring)->check(CLI::IsMember({"shi", "cone"}));
  render->add_option("-o,--out", out);

  auto* exp = with_system(app.add_subcommand("export", "Ball elements with inversion roots, JSON"));
  exp->add_option("--ball", radius)->check(CLI::NonNegativeNumber);
  exp->add_option("-o,--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (info->parsed()) return cmd_info(g);
    if (roots->parsed()) return cmd_roots(g, format, out);
    if (automaton->parsed()) return cmd_automaton(g, kind, dot, json_path);
    if (shi->parsed()) return cmd_shi(g, radius, format, out);
    if (cones->parsed()) return cmd_cones(g, radius, format, out, dot);
    if (growth->parsed()) return cmd_growth(g, length, kind, out);
    if (verify_cmd->parsed()) return cmd_verify(g, vopts, suite, report_path, json);
    if (render->parsed()) return cmd_render(g, radius, coloring, out);
    if (exp->parsed()) return cmd_export(g, radius, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kInconclusive;
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
