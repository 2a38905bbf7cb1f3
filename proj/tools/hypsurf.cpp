// Command-line front end over the JSON formats.
// Exit codes: 0 success, 1 verification or domain failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "hypsurf/collapse.hpp"
#include "hypsurf/cover.hpp"
#include "hypsurf/deform.hpp"
#include "hypsurf/flow.hpp"
#include "hypsurf/io.hpp"
#include "hypsurf/suites.hpp"

namespace fs = std::filesystem;
using namespace hs;

namespace {

// Bad flags, unreadable or malformed input.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load(const std::string& path, const std::string& what) {
  try {
    return read_json_file(path);
  } catch (const Error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

template <class F>
auto parse_or_usage(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

Q parse_rational(const std::string& s, const std::string& flag) {
  try {
    return parse_q(s);
  } catch (const std::exception&) {
    throw UsageError(flag + ": bad rational \"" + s + "\"");
  }
}

std::vector<int> parse_ids(const std::string& s, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": bad id \"" + item + "\"");
    }
  }
  return out;
}

// "e=p,e=p" edge proportions for a vertical collapse.
std::map<int, Q> parse_proportions(const std::string& s) {
  std::map<int, Q> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--vertical: expected edge=proportion, got \"" + item + "\"");
    auto ids = parse_ids(item.substr(0, eq), "--vertical");
    if (ids.size() != 1) throw UsageError("--vertical: bad edge in \"" + item + "\"");
    out[ids[0]] = parse_rational(item.substr(eq + 1), "--vertical");
  }
  return out;
}

Surface surface_arg(const std::string& path) {
  Json j = load(path, "surface");
  if (!has_metric(j)) return parse_or_usage("surface " + path, [&] { return build_unit(halftree_from_json(j)); });
  return parse_or_usage("surface " + path, [&] { return surface_from_json(j); });
}

Json report_json(const SuiteReport& r) {
  Json j = {{"suite", r.name}, {"ok", r.ok()}, {"checked", r.checked}, {"failed", r.failed}, {"failures", r.failures}};
  if (!r.lemmas.empty()) {
    Json ls = Json::array();
    for (const auto& l : r.lemmas) ls.push_back(to_json(l));
    j["lemmas"] = ls;
  }
  return j;
}

const CoverBlueprint& fixture_named(const std::vector<CoverBlueprint>& fx, const std::string& name) {
  for (const auto& b : fx)
    if (b.name == name) return b;
  std::string names;
  for (const auto& b : fx) names += (names.empty() ? "" : ", ") + b.name;
  throw UsageError("unknown fixture \"" + name + "\" (known: " + names + ")");
}

Json collapse_json(const Surface& s, const std::string& vertical, const std::string& horizontal, bool& ok) {
  Json j;
  const DisjointSurface* result = nullptr;
  VerticalCollapseReport vr;
  HorizontalCollapseReport hr;
  if (!vertical.empty()) {
    vr = vertical_collapse(s, {parse_proportions(vertical)});
    j = to_json(vr);
    result = &vr.result;
  } else {
    hr = horizontal_collapse(s, {parse_ids(horizontal, "--horizontal")});
    j = to_json(hr);
    result = &hr.result;
    for (const auto& g : hr.regluing) ok = ok && g.forest;
  }
  for (const auto& c : result->components) ok = ok && c.certification.ok;
  j["ok"] = ok;
  return j;
}

// --- pipeline ----------------------------------------------------------------------------

struct StepFailure {
  int index;
  std::string why;
};

Json run_pipeline(const Json& script, const std::string& out_dir, std::uint64_t seed, bool& ok) {
  if (!script.is_object() || !script.contains("steps") || !script["steps"].is_array())
    throw UsageError("pipeline: script needs a \"steps\" array");
  const auto& steps = script["steps"];
  if (!out_dir.empty()) fs::create_directories(out_dir);
  std::mt19937_64 rng(seed);
  std::optional<Surface> cur;
  Json log = Json::array();
  auto fixtures = cover_fixtures();
  for (size_t k = 0; k < steps.size(); ++k) {
    const Json& st = steps[k];
    const int idx = static_cast<int>(k);
    if (!st.is_object() || !st.contains("op") || !st["op"].is_string())
      throw UsageError("pipeline step " + std::to_string(k) + ": missing \"op\"");
    const std::string op = st["op"];
    Json out;
    auto need = [&]() -> Surface& {
      if (!cur) throw StepFailure{idx, "no current surface"};
      return *cur;
    };
    auto ids = [&](const char* key) {
      if (!st.contains(key) || !st[key].is_array()) throw UsageError("pipeline step " + std::to_string(k) + ": \"" + key + "\" must be a list");
      return st[key].get<std::vector<int>>();
    };
    auto rational = [&](const char* key) {
      if (!st.contains(key)) throw UsageError("pipeline step " + std::to_string(k) + ": missing \"" + key + "\"");
      return st[key].is_string() ? parse_rational(st[key].get<std::string>(), key) : Q(st[key].get<long>());
    };
    try {
      if (op == "build") {
        HalfTree t;
        if (st.contains("code")) t = decode(st["code"].get<std::string>());
        else if (st.contains("skeleton")) t = halftree_from_json(st["skeleton"]);
        else throw UsageError("pipeline step " + std::to_string(k) + ": build needs \"code\" or \"skeleton\"");
        auto d = validate(t);
        if (!d.ok) throw StepFailure{idx, d.message};
        if (st.contains("skeleton") && has_metric(st["skeleton"])) cur = surface_from_json(st["skeleton"]);
        else if (st.value("random", false)) cur = random_surface(t, rng);
        else cur = build_unit(t);
        out = to_json(*cur);
      } else if (op == "shear") {
        cur = shear_class(need(), ids("class"), rational("by"));
        out = to_json(*cur);
      } else if (op == "dilate") {
        cur = dilate_class(need(), ids("class"), rational("by"));
        out = to_json(*cur);
      } else if (op == "dilate-saddles") {
        cur = dilate_saddle_class(need(), ids("edges"), rational("by"));
        out = to_json(*cur);
      } else if (op == "align") {
        cur = align_junctions(need(), st.at("cylinder").get<int>(), st.value("bottom", 0), st.value("top", 0));
        out = to_json(*cur);
      } else if (op == "standard-position") {
        auto sp = standard_position(need(), st.at("port").get<int>(), st.value("transverse", false));
        cur = sp.adjusted;
        out = to_json(sp);
      } else if (op == "collapse") {
        std::string vertical, horizontal;
        if (st.contains("vertical")) {
          for (auto it = st["vertical"].begin(); it != st["vertical"].end(); ++it)
            vertical += (vertical.empty() ? "" : ",") + it.key() + "=" +
                        (it.value().is_string() ? it.value().get<std::string>() : std::to_string(it.value().get<long>()));
          if (vertical.empty()) throw UsageError("pipeline step " + std::to_string(k) + ": empty vertical collapse");
        } else {
          std::string h;
          for (int v : ids("horizontal")) h += (h.empty() ? "" : ",") + std::to_string(v);
          horizontal = h;
        }
        bool cok = true;
        out = collapse_json(need(), vertical, horizontal, cok);
        if (!cok) {
          ok = false;
          throw StepFailure{idx, "a collapsed component does not certify"};
        }
        // components go to their own files; the first becomes current
        const auto& comps = out["result"]["components"];
        if (!out_dir.empty())
          for (size_t c = 0; c < comps.size(); ++c) {
            std::ofstream f(fs::path(out_dir) / ("step" + std::to_string(k) + "_component" + std::to_string(c) + ".json"));
            f << dump(comps[c]["surface"]);
          }
        if (!comps.empty()) cur = surface_from_json(comps[0]["surface"]);
      } else if (op == "quotient") {
        if (!st.contains("partitions")) throw UsageError("pipeline step " + std::to_string(k) + ": quotient needs \"partitions\"");
        auto [cp, sp] = partitions_from_json(st["partitions"]);
        auto q = quotient(need(), cp, sp);
        out = to_json(q);
        if (!q.verdict.ok) throw StepFailure{idx, "quotient map does not certify"};
        cur = q.map.base;
      } else if (op == "pullback") {
        CoverBlueprint b = st.contains("fixture") ? fixture_named(fixtures, st["fixture"].get<std::string>())
                                                  : blueprint_from_json(st.at("blueprint"));
        auto pb = pullback(b);
        cur = pb.surface;
        out = to_json(pb.surface);
      } else if (op == "profile") {
        out = profile_json(need());
      } else {
        throw UsageError("pipeline step " + std::to_string(k) + ": unknown op \"" + op + "\"");
      }
    } catch (const Error& e) {
      throw StepFailure{idx, e.what()};
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("pipeline step " + std::to_string(k) + ": " + e.what());
    }
    Json entry = {{"index", idx}, {"op", op}, {"ok", true}};
    if (!out_dir.empty()) {
      std::string name = "step" + std::to_string(k) + "_" + op + ".json";
      std::ofstream f(fs::path(out_dir) / name);
      f << dump(out);
      entry["output"] = name;
    }
    if (cur) entry["stratum"] = stratum_of(cur->skeleton).name;
    log.push_back(entry);
  }
  return log;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperelliptic cylinder diagrams: enumeration, surfaces, deformations, collapses and covers"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("-o,--output", out, "Output file (default stdout)");

  // enumerate
  auto* en = app.add_subcommand("enumerate", "List half-tree skeletons with a given number of ports");
  int ports = 0;
  std::string en_format = "text";
  en->add_option("--ports,-n", ports, "Number of ports")->required()->check(CLI::Range(1, 14));
  en->add_option("--format", en_format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));

  // build
  auto* bu = app.add_subcommand("build", "Build a surface from a skeleton, a code, a blueprint or a shipped fixture");
  std::string bu_skel, bu_code, bu_blueprint, bu_fixture;
  std::uint64_t bu_seed = 0;
  bool bu_list = false;
  auto* g = bu->add_option_group("source");
  g->add_option("--skeleton", bu_skel, "HalfTree or Surface JSON file");
  g->add_option("--code", bu_code, "Canonical skeleton code");
  g->add_option("--blueprint", bu_blueprint, "Cover blueprint JSON; builds the covering surface");
  g->add_option("--fixture", bu_fixture, "Emit a shipped cover blueprint by name");
  g->add_flag("--list-fixtures", bu_list, "List shipped cover blueprints");
  g->require_option(1);
  auto* bu_seed_opt = bu->add_option("--seed", bu_seed, "Seed for a random rational metric");

  // profile
  auto* pr = app.add_subcommand("profile", "Stratum, singularities, Weierstrass points and diagram roundtrip");
  std::string pr_in;
  pr->add_option("surface", pr_in, "Surface JSON")->required();

  // deform
  auto* de = app.add_subcommand("deform", "Shears, dilations, standard position, cochains and candidate checks");
  std::string de_in, de_op, de_class, de_by = "1", de_parts;
  int de_port = -1;
  bool de_transverse = false;
  de->add_option("surface", de_in, "Surface JSON")->required();
  de->add_option("--op", de_op, "Operation")
      ->required()
      ->check(CLI::IsMember({"shear", "dilate", "dilate-saddles", "standard-position", "eta", "standard-shear",
                             "decompose", "candidate"}));
  de->add_option("--class", de_class, "Comma-separated vertex ids (or edge ids for dilate-saddles)");
  de->add_option("--by", de_by, "Shear amount or dilation factor, exact rational");
  de->add_option("--port", de_port, "Port for standard position");
  de->add_flag("--transverse", de_transverse, "Transverse standard position");
  de->add_option("--partitions", de_parts, "Partitions JSON for the candidate check");

  // collapse
  auto* co = app.add_subcommand("collapse", "Vertical or horizontal cylinder collapse with certification");
  std::string co_in, co_vertical, co_horizontal, co_dir;
  co->add_option("surface", co_in, "Surface JSON")->required();
  auto* cg = co->add_option_group("kind");
  cg->add_option("--vertical", co_vertical, "Edge proportions e=p,...");
  cg->add_option("--horizontal", co_horizontal, "Comma-separated vertex ids to delete");
  cg->require_option(1);
  co->add_option("--out-dir", co_dir, "Write each component surface here");

  // quotient
  auto* qu = app.add_subcommand("quotient", "Quotient by cylinder and saddle partitions, with cover certification");
  std::string qu_in, qu_parts, qu_blueprint;
  qu->add_option("surface", qu_in, "Surface JSON");
  qu->add_option("--partitions", qu_parts, "Partitions JSON");
  qu->add_option("--blueprint", qu_blueprint, "Blueprint JSON: pull back, then quotient by the fibre partitions");

  // verify
  auto* ve = app.add_subcommand("verify", "Batch verification suites");
  std::string suite;
  int ports_max = 6, metrics = 5, trials = 3;
  std::uint64_t ve_seed = 1;
  LemmaBounds lb;
  std::string fixtures_dir;
  ve->add_option("suite", suite, "lemmas, roundtrip, flow, collapse, cover, eta or all")
      ->required()
      ->check(CLI::IsMember({"lemmas", "roundtrip", "flow", "collapse", "cover", "eta", "all"}));
  ve->add_option("--ports-max", ports_max, "Largest port count")->check(CLI::Range(1, 10));
  ve->add_option("--metrics", metrics, "Random metrics per skeleton")->check(CLI::Range(1, 1000));
  ve->add_option("--trials", trials, "Random trials per collapse skeleton or blueprint")->check(CLI::Range(1, 1000));
  ve->add_option("--seed", ve_seed, "Seed");
  ve->add_option("--interval-n", lb.interval_n, "Interval lemma bound")->check(CLI::Range(1, 10));
  bool single_winding = false;
  ve->add_flag("--single-winding", single_winding,
               "Interval lemma: only systems that go once round the circle (the collapse geometry)");
  ve->add_option("--balls-n", lb.balls_n, "Balls lemma: number of balls")->check(CLI::Range(1, 14));
  ve->add_option("--balls-m", lb.balls_m, "Balls lemma: number of colours")->check(CLI::Range(1, 6));
  ve->add_option("--tree-vertices", lb.tree_vertices, "Coloured tree lemma: vertices")->check(CLI::Range(1, 10));
  ve->add_option("--tree-colors", lb.tree_colors, "Coloured tree lemma: colours")->check(CLI::Range(1, 6));
  ve->add_option("--fixtures", fixtures_dir, "Directory of blueprint JSON files for the cover suite");

  // pipeline
  auto* pi = app.add_subcommand("pipeline", "Run a JSON script of build/deform/collapse/quotient steps");
  std::string pi_in, pi_dir;
  std::uint64_t pi_seed = 0;
  pi->add_option("script", pi_in, "Script JSON")->required();
  pi->add_option("--out-dir", pi_dir, "Write each intermediate result here");
  pi->add_option("--seed", pi_seed, "Seed for random metrics in build steps");

  // diagram
  auto* di = app.add_subcommand("diagram", "DOT drawing of a skeleton or SVG drawing of a surface");
  std::string di_in, di_format = "dot";
  di->add_option("input", di_in, "HalfTree or Surface JSON")->required();
  di->add_option("--format", di_format, "dot or svg")->check(CLI::IsMember({"dot", "svg"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*en) {
      auto trees = enumerate(ports);
      if (en_format == "json") {
        Json codes = Json::array();
        for (const auto& t : trees) codes.push_back(canonical_form(t).code);
        emit(dump({{"ports", ports}, {"count", trees.size()}, {"codes", codes}}), out);
      } else if (en_format == "dot") {
        std::string s;
        for (const auto& t : trees) s += to_dot(t);
        emit(s, out);
      } else {
        std::string s = std::to_string(trees.size()) + "\n";
        for (const auto& t : trees) s += canonical_form(t).code + "\n";
        emit(s, out);
      }
      return 0;
    }

    if (*bu) {
      auto fx = cover_fixtures();
      if (bu_list) {
        Json names = Json::array();
        for (const auto& b : fx) names.push_back(b.name);
        emit(dump({{"fixtures", names}}), out);
        return 0;
      }
      if (!bu_fixture.empty()) {
        emit(dump(to_json(fixture_named(fx, bu_fixture))), out);
        return 0;
      }
      if (!bu_blueprint.empty()) {
        auto b = parse_or_usage("blueprint", [&] { return blueprint_from_json(load(bu_blueprint, "blueprint")); });
        emit(dump(to_json(pullback(b).surface)), out);
        return 0;
      }
      HalfTree t;
      Json j;
      if (!bu_code.empty()) {
        t = parse_or_usage("--code", [&] { return decode(bu_code); });
      } else {
        j = load(bu_skel, "skeleton");
        t = parse_or_usage("skeleton", [&] { return halftree_from_json(j); });
      }
      auto d = validate(t);
      if (!d.ok) throw Error("skeleton is not a half-tree: " + d.message);
      Surface s;
      if (bu_seed_opt->count()) {
        std::mt19937_64 rng(bu_seed);
        s = random_surface(t, rng);
      } else if (has_metric(j)) {
        s = parse_or_usage("skeleton", [&] { return surface_from_json(j); });
      } else {
        s = build_unit(t);
      }
      emit(dump(to_json(s)), out);
      return 0;
    }

    if (*pr) {
      auto s = surface_arg(pr_in);
      Json j = profile_json(s);
      emit(dump(j), out);
      return j["involution"].get<bool>() && j["roundtrip"].get<bool>() && j["weierstrass"]["residual"] == 0 ? 0 : 1;
    }

    if (*de) {
      auto s = surface_arg(de_in);
      auto cls = parse_ids(de_class, "--class");
      Q by = parse_rational(de_by, "--by");
      if ((de_op == "shear" || de_op == "dilate" || de_op == "dilate-saddles" || de_op == "standard-shear") && cls.empty())
        throw UsageError(de_op + " needs --class");
      if (de_op == "shear") emit(dump(to_json(shear_class(s, cls, by))), out);
      else if (de_op == "dilate") emit(dump(to_json(dilate_class(s, cls, by))), out);
      else if (de_op == "dilate-saddles") emit(dump(to_json(dilate_saddle_class(s, cls, by))), out);
      else if (de_op == "standard-shear") emit(dump(to_json(standard_shear(s, cls))), out);
      else if (de_op == "eta") emit(dump(to_json(relative_deformation(s))), out);
      else if (de_op == "decompose") emit(dump(to_json(vertical_decomposition(s))), out);
      else if (de_op == "standard-position") {
        if (de_port < 0) throw UsageError("standard-position needs --port");
        emit(dump(to_json(standard_position(s, de_port, de_transverse))), out);
      } else {
        if (de_parts.empty()) throw UsageError("candidate needs --partitions");
        auto [cp, sp] = parse_or_usage("partitions", [&] { return partitions_from_json(load(de_parts, "partitions")); });
        auto r = check_candidate(s, cp, sp);
        emit(dump(to_json(r)), out);
        return r.ok ? 0 : 1;
      }
      return 0;
    }

    if (*co) {
      auto s = surface_arg(co_in);
      bool ok = true;
      Json j = collapse_json(s, co_vertical, co_horizontal, ok);
      if (!co_dir.empty()) {
        fs::create_directories(co_dir);
        const auto& comps = j["result"]["components"];
        for (size_t c = 0; c < comps.size(); ++c) {
          std::ofstream f(fs::path(co_dir) / ("component" + std::to_string(c) + ".json"));
          f << dump(comps[c]["surface"]);
        }
      }
      emit(dump(j), out);
      return ok ? 0 : 1;
    }

    if (*qu) {
      Surface s;
      CylinderPartition cp;
      SaddlePartition sp;
      if (!qu_blueprint.empty()) {
        auto b = parse_or_usage("blueprint", [&] { return blueprint_from_json(load(qu_blueprint, "blueprint")); });
        auto pb = pullback(b);
        s = pb.surface;
        cp = pb.cylinders;
        sp = pb.saddles;
      } else {
        if (qu_in.empty() || qu_parts.empty()) throw UsageError("quotient needs a surface and --partitions, or --blueprint");
        s = surface_arg(qu_in);
        std::tie(cp, sp) = parse_or_usage("partitions", [&] { return partitions_from_json(load(qu_parts, "partitions")); });
      }
      QuotientResult q;
      try {
        q = quotient(s, cp, sp);
      } catch (const Error& e) {
        Json j = {{"ok", false}, {"error", e.what()}, {"candidate", to_json(check_candidate(s, cp, sp))}};
        emit(dump(j), out);
        std::cerr << "quotient: " << e.what() << "\n";
        return 1;
      }
      Json j = to_json(q);
      emit(dump(j), out);
      return j["ok"].get<bool>() ? 0 : 1;
    }

    if (*ve) {
      std::vector<SuiteReport> reps;
      bool all = suite == "all";
      std::vector<CoverBlueprint> blueprints = cover_fixtures();
      Json file_errors = Json::array();
      if (!fixtures_dir.empty()) {
        if (!fs::is_directory(fixtures_dir)) throw UsageError("--fixtures: not a directory: " + fixtures_dir);
        blueprints.clear();
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(fixtures_dir))
          if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& p : files) {
          try {
            auto j = read_json_file(p.string());
            if (!j.contains("fibers")) continue;  // not a blueprint
            auto b = blueprint_from_json(j);
            if (b.name.empty()) b.name = p.filename().string();
            pullback(b);
            blueprints.push_back(b);
          } catch (const Error& e) {
            file_errors.push_back(p.filename().string() + ": " + e.what());
          }
        }
      }
      lb.interval_literal = !single_winding;
      if (all || suite == "lemmas") reps.push_back(suite_lemmas(lb));
      if (all || suite == "roundtrip") reps.push_back(suite_roundtrip(ports_max, metrics, ve_seed));
      if (all || suite == "flow") reps.push_back(suite_flow(std::min(ports_max, 6), metrics, ve_seed));
      if (all || suite == "collapse") reps.push_back(suite_collapse(ports_max, trials, ve_seed));
      if (all || suite == "eta") reps.push_back(suite_eta(ports_max));
      if (all || suite == "cover") {
        reps.push_back(suite_cover(blueprints, trials, ve_seed));
        reps.push_back(suite_proportion(blueprints, trials, ve_seed));
      }
      bool ok = file_errors.empty();
      Json suites = Json::array();
      for (const auto& r : reps) {
        ok = ok && r.ok();
        suites.push_back(report_json(r));
      }
      Json j = {{"suite", suite}, {"seed", ve_seed}, {"ok", ok}, {"suites", suites}};
      if (!fixtures_dir.empty()) j["fixture_errors"] = file_errors;
      emit(dump(j), out);
      for (const auto& e : file_errors) std::cerr << "fixture: " << e.get<std::string>() << "\n";
      return ok ? 0 : 1;
    }

    if (*pi) {
      Json script = load(pi_in, "script");
      bool ok = true;
      try {
        Json log = run_pipeline(script, pi_dir, pi_seed, ok);
        emit(dump({{"ok", true}, {"steps", log}}), out);
        return 0;
      } catch (const StepFailure& f) {
        emit(dump({{"ok", false}, {"failed_step", f.index}, {"error", f.why}}), out);
        std::cerr << "pipeline: step " << f.index << ": " << f.why << "\n";
        return 1;
      }
    }

    if (*di) {
      Json j = load(di_in, "input");
      if (di_format == "svg") {
        Surface s = has_metric(j) ? parse_or_usage("input", [&] { return surface_from_json(j); })
                                  : parse_or_usage("input", [&] { return build_unit(halftree_from_json(j)); });
        emit(surface_svg(s), out);
      } else {
        emit(to_dot(parse_or_usage("input", [&] { return halftree_from_json(j); })), out);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
