#include "hypsurf/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hs {

namespace {

std::string qs(const Q& q) { return to_string(q); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw Error(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw Error(where + ": missing field \"" + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw Error(where + ": expected an integer");
  return j.get<int>();
}

Q as_q(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Q(j.get<long>());
  if (!j.is_string()) throw Error(where + ": expected an exact rational string");
  try {
    return parse_q(j.get<std::string>());
  } catch (const std::exception&) {
    throw Error(where + ": bad rational \"" + j.get<std::string>() + "\"");
  }
}

std::vector<int> int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": expected an array");
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::vector<std::vector<int>> int_lists(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": expected an array");
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(int_list(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::map<int, Q> q_map(const Json& j, const std::string& where) {
  if (!j.is_object()) throw Error(where + ": expected an object keyed by id");
  std::map<int, Q> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int k;
    try {
      size_t used = 0;
      k = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Error(where + ": key \"" + it.key() + "\" is not an integer id");
    }
    out[k] = as_q(it.value(), where + "/" + it.key());
  }
  return out;
}

Json q_obj(const std::map<int, Q>& m) {
  Json o = Json::object();
  for (auto& [k, v] : m) o[std::to_string(k)] = qs(v);
  return o;
}

Json pairs_json(const std::vector<std::pair<int, int>>& ps) {
  Json a = Json::array();
  for (auto [x, y] : ps) a.push_back({x, y});
  return a;
}

std::vector<std::pair<int, int>> pairs_from(const Json& j, const std::string& where) {
  std::vector<std::pair<int, int>> out;
  auto ls = int_lists(j, where);
  for (size_t i = 0; i < ls.size(); ++i) {
    if (ls[i].size() != 2) throw Error(where + "/" + std::to_string(i) + ": a pair needs two ports");
    out.push_back({ls[i][0], ls[i][1]});
  }
  return out;
}

Json checks_json(const std::vector<CheckResult>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"ok", c.ok}, {"details", c.details}});
  return a;
}

Json checks_json(const std::vector<CoverCheck>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"ok", c.ok}, {"details", c.details}});
  return a;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(where + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const HalfTree& t) {
  Json vs = Json::array();
  for (const auto& v : t.vertices) vs.push_back({{"id", v.id}, {"ports", v.ports}});
  return {{"vertices", vs}, {"pairs", pairs_json(t.pairs)}};
}

HalfTree halftree_from_json(const Json& j) {
  HalfTree t;
  const auto& vs = field(j, "vertices", "");
  if (!vs.is_array()) throw Error("/vertices: expected an array");
  for (size_t i = 0; i < vs.size(); ++i) {
    std::string w = "/vertices/" + std::to_string(i);
    t.vertices.push_back({as_int(field(vs[i], "id", w), w + "/id"), int_list(field(vs[i], "ports", w), w + "/ports")});
  }
  if (j.contains("pairs")) t.pairs = pairs_from(j["pairs"], "/pairs");
  return t;
}

bool has_metric(const Json& j) { return j.is_object() && j.contains("lengths") && j.contains("heights"); }

Json to_json(const Surface& s) {
  Json j = to_json(s.skeleton);
  j["lengths"] = q_obj(s.length);
  j["heights"] = q_obj(s.height);
  j["twists"] = q_obj(s.twist);
  return j;
}

Surface surface_from_json(const Json& j) {
  HalfTree t = halftree_from_json(j);
  auto d = validate(t);
  if (!d.ok) throw Error("skeleton: " + d.message);
  auto len = q_map(field(j, "lengths", ""), "/lengths");
  auto hgt = q_map(field(j, "heights", ""), "/heights");
  std::map<int, Q> tw;
  if (j.contains("twists")) tw = q_map(j["twists"], "/twists");
  // one length per edge is enough; the mate inherits it
  TreeIndex ix(t);
  for (auto& [p, m] : ix.mate) {
    bool hp = len.count(p), hm = len.count(m);
    if (hp && hm && len[p] != len[m])
      throw Error("/lengths: ports " + std::to_string(p) + " and " + std::to_string(m) + " are paired but differ");
    if (hp && !hm) len[m] = len[p];
    if (hm && !hp) len[p] = len[m];
  }
  return build(t, len, hgt, tw);
}

Json to_json(const CylinderPartition& cp, const SaddlePartition& sp) {
  return {{"cylinder_classes", cp.classes}, {"saddle_classes", sp.classes}};
}

std::pair<CylinderPartition, SaddlePartition> partitions_from_json(const Json& j) {
  CylinderPartition cp{int_lists(field(j, "cylinder_classes", ""), "/cylinder_classes")};
  SaddlePartition sp{int_lists(field(j, "saddle_classes", ""), "/saddle_classes")};
  return {cp, sp};
}

Json to_json(const FormalCochain& c) { return {{"coefficients", q_obj(c.coeff)}}; }

Json to_json(const VerticalCylinder& v) {
  Json iv = Json::array();
  for (const auto& i : v.intervals) iv.push_back({{"cylinder", i.cyl}, {"start", qs(i.start)}, {"length", qs(i.length)}});
  return {{"width", qs(v.width)}, {"core", qs(v.core)}, {"crossings", q_obj(v.crossings)}, {"intervals", iv}};
}

Json to_json(const VerticalDecomposition& d) {
  Json cs = Json::array();
  for (const auto& v : d.cylinders) cs.push_back(to_json(v));
  Json bp = Json::object();
  for (auto& [c, xs] : d.breakpoints) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(qs(x));
    bp[std::to_string(c)] = a;
  }
  // proportion of each horizontal cylinder met by each vertical cylinder
  Json prop = Json::array();
  for (const auto& v : d.cylinders) {
    std::map<int, Q> m;
    for (auto& [c, w] : v.crossings) m[c] = w / d.circumference.at(c);
    prop.push_back(q_obj(m));
  }
  Q total = 0;
  for (const auto& v : d.cylinders) total += v.width * v.core;
  return {{"cylinders", cs}, {"breakpoints", bp}, {"proportions", prop}, {"area", qs(total)}};
}

Json to_json(const StandardPosition& p) {
  return {{"c", p.c},
          {"d", p.d},
          {"transverse", p.transverse},
          {"slope", qs(p.slope)},
          {"delta", q_obj(p.delta)},
          {"cylinder", to_json(p.cylinder)},
          {"surface", to_json(p.adjusted)}};
}

Json to_json(const CandidateReport& r) {
  Json bases = Json::array();
  for (const auto& b : r.bases) {
    Json lens = Json::array();
    for (const auto& l : b.lengths) lens.push_back(qs(l));
    Json wrap = Json::object();
    for (auto& [v, w] : b.wrap) wrap[std::to_string(v)] = w;
    bases.push_back({{"saddle_classes", b.saddle_classes},
                     {"lengths", lens},
                     {"height", qs(b.height)},
                     {"twist", qs(b.twist)},
                     {"circumference", qs(b.circumference)},
                     {"wrap", wrap}});
  }
  return {{"ok", r.ok}, {"checks", checks_json(r.checks)}, {"bases", bases}};
}

Json to_json(const Certification& c) {
  Json j = {{"ok", c.ok}, {"involution", c.involution}, {"tree", c.tree}, {"message", c.message}};
  if (c.ok) j["stratum"] = c.stratum;
  return j;
}

Json to_json(const DisjointSurface& d) {
  Json cs = Json::array();
  for (const auto& c : d.components)
    cs.push_back({{"surface", to_json(c.surface)}, {"certification", to_json(c.certification)}});
  return {{"components", cs}, {"collapsed_area", qs(d.collapsed_area)}, {"notices", d.notices}};
}

Json to_json(const VerticalCollapseReport& r) {
  Json sk = Json::array();
  for (const auto& t : r.predicted_skeletons) sk.push_back(to_json(t));
  return {{"kind", "vertical"},
          {"deleted_edges", r.deleted_edges},
          {"predicted_collapsed_area", qs(r.predicted_collapsed_area)},
          {"predicted_skeletons", sk},
          {"result", to_json(r.result)}};
}

Json to_json(const HorizontalCollapseReport& r) {
  Json gl = Json::array();
  for (const auto& g : r.glues)
    gl.push_back({{"deleted", g.deleted},
                  {"lower", g.lower_cyl},
                  {"upper", g.upper_cyl},
                  {"top_segment", g.top_segment},
                  {"bottom_segment", g.bottom_segment},
                  {"top_source", g.top_source},
                  {"bottom_source", g.bottom_source},
                  {"top_offset", qs(g.top_offset)},
                  {"bottom_offset", qs(g.bottom_offset)},
                  {"length", qs(g.length)}});
  Json mk = Json::array();
  for (const auto& m : r.marks)
    mk.push_back({{"cylinder", m.cyl},
                  {"side", m.side},
                  {"source_segment", m.source_segment},
                  {"offset", qs(m.offset)},
                  {"reason", m.reason},
                  {"order", m.order}});
  Json rg = Json::array();
  for (const auto& g : r.regluing)
    rg.push_back({{"deleted", g.deleted},
                  {"neighbours", g.neighbours},
                  {"edges", pairs_json(g.edges)},
                  {"self_gluings", g.self_gluings},
                  {"forest", g.forest}});
  return {{"kind", "horizontal"}, {"deleted", r.deleted}, {"glues", gl}, {"marks", mk}, {"regluing", rg},
          {"result", to_json(r.result)}};
}

Json to_json(const GraphCoverReport& r) {
  Json c3 = Json::object();
  for (auto& [v, b] : r.stated_condition3) c3[std::to_string(v)] = b;
  return {{"ok", r.ok},
          {"errors", r.errors},
          {"chi_source", r.chi_source},
          {"chi_target", r.chi_target},
          {"branch_sum", r.branch_sum},
          {"residual", r.residual},
          {"folded_edges", r.folded_edges},
          {"stated_condition3", c3},
          {"flags", r.flags}};
}

Json to_json(const LemmaReport& r) {
  return {{"lemma", r.lemma},
          {"search_space", r.search_space},
          {"counterexamples", r.counterexamples},
          {"ok", r.counterexamples.empty()}};
}

Json to_json(const CoverBlueprint& b) {
  Json fs = Json::array();
  for (const auto& f : b.fibers) {
    Json x = {{"id", f.id}, {"base", f.base}, {"wrap", f.wrap}, {"ports", f.ports}};
    if (f.twist) x["twist"] = qs(*f.twist);
    fs.push_back(x);
  }
  Json ls = Json::array();
  for (auto& [p, l] : b.lifts) ls.push_back({{"port", p}, {"base_port", l.base_port}, {"sheet", l.sheet}});
  return {{"name", b.name}, {"degree", b.degree}, {"base", to_json(b.base)}, {"fibers", fs}, {"lifts", ls},
          {"pairs", pairs_json(b.pairs)}};
}

CoverBlueprint blueprint_from_json(const Json& j) {
  CoverBlueprint b;
  if (j.contains("name")) b.name = j["name"].get<std::string>();
  b.degree = as_int(field(j, "degree", ""), "/degree");
  try {
    b.base = surface_from_json(field(j, "base", ""));
  } catch (const Error& e) {
    throw Error(std::string("/base") + e.what());
  }
  const auto& fs = field(j, "fibers", "");
  if (!fs.is_array()) throw Error("/fibers: expected an array");
  for (size_t i = 0; i < fs.size(); ++i) {
    std::string w = "/fibers/" + std::to_string(i);
    Fiber f;
    f.id = as_int(field(fs[i], "id", w), w + "/id");
    f.base = as_int(field(fs[i], "base", w), w + "/base");
    f.wrap = as_int(field(fs[i], "wrap", w), w + "/wrap");
    f.ports = int_list(field(fs[i], "ports", w), w + "/ports");
    if (fs[i].contains("twist")) f.twist = as_q(fs[i]["twist"], w + "/twist");
    b.fibers.push_back(f);
  }
  const auto& ls = field(j, "lifts", "");
  if (!ls.is_array()) throw Error("/lifts: expected an array");
  for (size_t i = 0; i < ls.size(); ++i) {
    std::string w = "/lifts/" + std::to_string(i);
    int p = as_int(field(ls[i], "port", w), w + "/port");
    if (b.lifts.count(p)) throw Error(w + ": port " + std::to_string(p) + " lifted twice");
    b.lifts[p] = {as_int(field(ls[i], "base_port", w), w + "/base_port"), as_int(field(ls[i], "sheet", w), w + "/sheet")};
  }
  if (j.contains("pairs")) b.pairs = pairs_from(j["pairs"], "/pairs");
  return b;
}

Json to_json(const CoverMap& m) {
  Json cyl = Json::object(), port = Json::object();
  for (auto& [a, b] : m.cylinder) cyl[std::to_string(a)] = b;
  for (auto& [a, b] : m.port) port[std::to_string(a)] = b;
  return {{"degree", m.degree}, {"base", to_json(m.base)}, {"cylinder", cyl}, {"port", port}, {"offset", q_obj(m.offset)}};
}

Json to_json(const CoverVerdict& v) {
  Json rm = Json::array();
  for (const auto& r : v.ramification)
    rm.push_back({{"source_zero", r.source_zero},
                  {"base_zero", r.base_zero},
                  {"source_order", r.source_order},
                  {"base_order", r.base_order},
                  {"local_degree", r.local_degree}});
  return {{"ok", v.ok}, {"checks", checks_json(v.checks)}, {"graph", to_json(v.graph)}, {"ramification", rm}};
}

Json to_json(const QuotientResult& q) {
  return {{"ok", q.verdict.ok && q.stratum_law},
          {"degree", q.map.degree},
          {"base_stratum", q.base_stratum},
          {"half_edge_classes", q.half_edge_classes},
          {"stratum_law", q.stratum_law},
          {"stratum_parity", q.stratum_parity},
          {"candidate", to_json(q.candidate)},
          {"verdict", to_json(q.verdict)},
          {"map", to_json(q.map)}};
}

Json profile_json(const Surface& s) {
  auto st = stratum_of(s.skeleton);
  auto prof = singularity_profile(s, false);
  auto w = weierstrass_points(s);
  auto j = involution_check(s);
  bool roundtrip = false;
  std::string failure;
  try {
    roundtrip = canonical_form(lindsey_tree(s)).code == canonical_form(s.skeleton).code;
  } catch (const Error& e) {
    failure = e.what();
  }
  Json out = {{"stratum", st.name},
              {"genus", st.genus},
              {"zeros", st.zeros},
              {"profile", prof.orders},
              {"area", qs(area(s))},
              {"involution", j.ok},
              {"roundtrip", roundtrip},
              {"weierstrass",
               {{"count", static_cast<int>(w.points.size())},
                {"expected", w.expected},
                {"formula", w.formula},
                {"residual", w.residual},
                {"fixed_zeros", w.fixed_zeros}}}};
  if (!j.ok) out["failure"] = j.failure;
  if (!failure.empty()) out["failure"] = failure;
  return out;
}

std::string surface_svg(const Surface& s) {
  // one rectangle per cylinder, stacked in vertex order, scaled to a common unit
  const double unit = 80, pad = 30, gap = 40;
  double width = 0, y = pad;
  for (const auto& c : s.raw.cylinders) width = std::max(width, c.circumference.get_d() * unit);
  std::ostringstream o;
  char buf[256];
  double total = pad;
  for (const auto& c : s.raw.cylinders) total += c.height.get_d() * unit + gap;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" font-family=\"sans-serif\" "
                "font-size=\"11\">\n",
                width + 2 * pad + 40, total + pad);
  o << buf;
  for (const auto& c : s.raw.cylinders) {
    double h = c.height.get_d() * unit, w = c.circumference.get_d() * unit;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"#eef3fb\" stroke=\"#333\"/>\n", pad,
                  y, w, h);
    o << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\">C%d</text>\n", pad + w + 6, y + h / 2 + 4, c.id);
    o << buf;
    for (const auto& b : c.bottom) {
      double x = pad + b.start.get_d() * unit;
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\"/>\n", x, y + h);
      o << buf;
      std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%d</text>\n",
                    x + b.length.get_d() * unit / 2, y + h + 13, b.id);
      o << buf;
    }
    for (const auto& t : c.top) {
      double x = pad + t.start.get_d() * unit;
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\"/>\n", x, y);
      o << buf;
      // top segments may wrap past the right edge; label at the visible midpoint
      double mid = t.start.get_d() + t.length.get_d() / 2;
      if (mid >= c.circumference.get_d()) mid -= c.circumference.get_d();
      std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%d</text>\n",
                    pad + mid * unit, y - 4, t.id);
      o << buf;
    }
    y += h + gap;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace hs
