#include "gshv/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace gshv {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& msg) {
  fail(Errc::SchemaError, path + ": " + msg);
}

const json& need(const json& j, const std::string& key,
                 const std::string& path) {
  if (!j.is_object() || !j.contains(key)) schema_fail(path, "missing " + key);
  return j.at(key);
}

std::vector<std::vector<int>> int_table(const json& j,
                                        const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array()) schema_fail(path, "expected an array of arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) schema_fail(path, "expected integer entries");
      r.push_back(v.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

GAction parse_gaction(const json& j, std::shared_ptr<const FiniteGroup> group,
                      const std::string& path) {
  GAction a;
  a.group = std::move(group);
  const json& elems = need(j, "elements", path);
  if (!elems.is_array()) schema_fail(path + ".elements", "expected an array");
  for (const auto& e : elems) {
    if (!e.is_string()) schema_fail(path + ".elements", "labels are strings");
    a.labels.push_back(e.get<std::string>());
  }
  for (std::size_t i = 0; i < a.labels.size(); ++i)
    for (std::size_t k = i + 1; k < a.labels.size(); ++k)
      if (a.labels[i] == a.labels[k])
        schema_fail(path + ".elements", "duplicate label " + a.labels[i]);
  a.act = int_table(need(j, "action", path), path + ".action");
  validate_action(a);
  return a;
}

std::vector<int> parse_element_map(const json& j, const GAction& source,
                                   const GAction& target,
                                   const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object of label pairs");
  std::vector<int> map(source.size(), -1);
  for (const auto& [from, to] : j.items()) {
    int x = source.index_of_label(from);
    if (x < 0) schema_fail(path, "unknown source element " + from);
    if (!to.is_string()) schema_fail(path, "targets are labels");
    int y = target.index_of_label(to.get<std::string>());
    if (y < 0) schema_fail(path, "unknown target element " + to.get<std::string>());
    map[x] = y;
  }
  for (int x = 0; x < source.size(); ++x)
    if (map[x] < 0)
      schema_fail(path, "element " + source.labels[x] + " has no image");
  return map;
}

json emit_gaction(const GAction& a) {
  json j;
  j["elements"] = a.labels;
  j["action"] = a.act;
  return j;
}

json emit_element_map(const GAction& source, const GAction& target,
                      const std::vector<int>& map) {
  json j = json::object();
  for (int x = 0; x < source.size(); ++x)
    j[source.labels[x]] = target.labels[map[x]];
  return j;
}

}  // namespace

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::ParseError, e.what());
  }
}

json lower(const json& doc) {
  if (!doc.is_object()) fail(Errc::SchemaError, "instance must be an object");
  if (!doc.contains("chain") && !doc.contains("dvr")) return doc;

  auto group = validate_group(
      int_table(need(need(doc, "group", "$"), "table", "$.group"),
                "$.group.table"));

  json out;
  out["group"] = {{"table", int_table(doc["group"]["table"], "$.group.table")}};

  ChainPresheaf cp;
  if (doc.contains("dvr")) {
    const json& d = doc.at("dvr");
    std::vector<int> gens;
    for (const auto& v : need(d, "inertia", "$.dvr"))
      gens.push_back(v.get<int>());
    GAction special = parse_gaction(need(d, "special", "$.dvr"), group,
                                    "$.dvr.special");
    GAction generic = parse_gaction(need(d, "generic", "$.dvr"), group,
                                    "$.dvr.generic");
    auto ell = parse_element_map(need(d, "ell", "$.dvr"), special, generic,
                                 "$.dvr.ell");
    DVRDatum datum = make_dvr(group, subgroup_generated(*group, gens),
                              std::move(special), std::move(generic),
                              std::move(ell));
    cp = dvr_to_chain(datum);
  } else {
    const json& c = doc.at("chain");
    const json& inertia = need(c, "inertia", "$.chain");
    const json& values = need(c, "values", "$.chain");
    const json& locs = need(c, "loc", "$.chain");
    if (!inertia.is_array() || !values.is_array() || !locs.is_array())
      schema_fail("$.chain", "inertia, values, loc must be arrays");
    if (inertia.size() != values.size() || locs.size() + 1 != values.size())
      schema_fail("$.chain", "inconsistent chain lengths");
    std::vector<Subgroup> subs;
    for (const auto& gens : inertia) {
      std::vector<int> g;
      for (const auto& v : gens) g.push_back(v.get<int>());
      subs.push_back(subgroup_generated(*group, g));
    }
    std::vector<GAction> vals;
    for (std::size_t i = 0; i < values.size(); ++i)
      vals.push_back(parse_gaction(values[i], group,
                                   "$.chain.values[" + std::to_string(i) + "]"));
    std::vector<std::vector<int>> maps;
    for (std::size_t i = 0; i < locs.size(); ++i)
      maps.push_back(parse_element_map(locs[i], vals[i + 1], vals[i],
                                       "$.chain.loc[" + std::to_string(i) +
                                           "]"));
    cp = make_chain_presheaf(make_chain_model(group, std::move(subs)),
                             std::move(vals), std::move(maps));
  }

  auto [ctx, sheaf] = chain_to_sheaf(cp);
  return emit_instance(Instance{ctx, sheaf});
}

Instance parse_instance(const json& raw) {
  json doc = lower(raw);

  auto group = validate_group(
      int_table(need(need(doc, "group", "$"), "table", "$.group"),
                "$.group.table"));

  const json& js = need(doc, "site", "$");
  std::vector<std::string> points;
  for (const auto& p : need(js, "points", "$.site")) {
    if (!p.is_string()) schema_fail("$.site.points", "labels are strings");
    points.push_back(p.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : need(js, "hasse", "$.site")) {
    if (!e.is_array() || e.size() != 2)
      schema_fail("$.site.hasse", "edges are [from,to] pairs");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  auto site = validate_site(points, edges,
                            need(js, "generic", "$.site").get<std::string>());

  const json& ji = need(doc, "inertia", "$");
  std::vector<Subgroup> inertia(site->size());
  std::vector<bool> seen(site->size(), false);
  for (const auto& [label, gens] : ji.items()) {
    int s = site->index_of(label);
    if (s < 0) schema_fail("$.inertia", "unknown point " + label);
    std::vector<int> g;
    for (const auto& v : gens) g.push_back(v.get<int>());
    inertia[s] = subgroup_generated(*group, g);
    seen[s] = true;
  }
  for (int s = 0; s < site->size(); ++s)
    if (!seen[s]) schema_fail("$.inertia", "missing point " + site->label(s));
  StarContext ctx = make_context(site, group, std::move(inertia));

  const json& jsh = need(doc, "sheaf", "$");
  const json& jst = need(jsh, "stalks", "$.sheaf");
  std::vector<GAction> stalks(site->size(), empty_gset(group));
  std::vector<bool> have(site->size(), false);
  for (const auto& [label, st] : jst.items()) {
    int s = site->index_of(label);
    if (s < 0) schema_fail("$.sheaf.stalks", "unknown point " + label);
    stalks[s] = parse_gaction(st, group, "$.sheaf.stalks." + label);
    have[s] = true;
  }
  for (int s = 0; s < site->size(); ++s)
    if (!have[s])
      schema_fail("$.sheaf.stalks", "missing point " + site->label(s));

  std::map<std::pair<int, int>, std::vector<int>> loc;
  for (const auto& e : need(jsh, "loc", "$.sheaf")) {
    std::string from = need(e, "from", "$.sheaf.loc").get<std::string>();
    std::string to = need(e, "to", "$.sheaf.loc").get<std::string>();
    int a = site->index_of(from);
    int b = site->index_of(to);
    if (a < 0 || b < 0) schema_fail("$.sheaf.loc", from + " -> " + to);
    loc[{a, b}] = parse_element_map(need(e, "map", "$.sheaf.loc"), stalks[a],
                                    stalks[b],
                                    "$.sheaf.loc[" + from + "->" + to + "]");
  }
  GSheaf sheaf = make_sheaf(site, group, std::move(stalks), std::move(loc));
  return Instance{std::move(ctx), std::move(sheaf)};
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(parse_json_text(ss.str()));
}

json emit_instance(const Instance& inst) {
  const GSheaf& d = inst.sheaf;
  json out;
  {
    const auto& g = *inst.ctx.group;
    std::vector<std::vector<int>> table(g.order(), std::vector<int>(g.order()));
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b) table[a][b] = g.mul(a, b);
    out["group"] = {{"table", table}};
  }
  {
    json s;
    s["points"] = inst.ctx.site->labels();
    s["generic"] = inst.ctx.site->label(inst.ctx.site->generic());
    json hasse = json::array();
    for (const auto& [a, b] : inst.ctx.site->hasse())
      hasse.push_back({inst.ctx.site->label(a), inst.ctx.site->label(b)});
    s["hasse"] = hasse;
    out["site"] = s;
  }
  {
    json i = json::object();
    for (int s = 0; s < inst.ctx.site->size(); ++s)
      i[inst.ctx.site->label(s)] = inst.ctx.inertia.inertia[s].elements;
    out["inertia"] = i;
  }
  {
    json stalks = json::object();
    for (int s = 0; s < inst.ctx.site->size(); ++s)
      stalks[inst.ctx.site->label(s)] = emit_gaction(d.stalks[s]);
    json locs = json::array();
    for (const auto& [edge, map] : d.loc) {
      json e;
      e["from"] = inst.ctx.site->label(edge.first);
      e["to"] = inst.ctx.site->label(edge.second);
      e["map"] =
          emit_element_map(d.stalks[edge.first], d.stalks[edge.second], map);
      locs.push_back(e);
    }
    out["sheaf"] = {{"stalks", stalks}, {"loc", locs}};
  }
  return out;
}

std::string digest(const json& doc) {
  std::string text = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

json report_json(const Instance& inst, const ClassificationReport& r) {
  json out;
  json c;
  c["is_star"] = r.is_star;
  c["is_et"] = r.is_et;
  c["is_set"] = r.is_set;
  c["is_loc"] = r.is_loc;
  c["ladder3"] = {{"3a", r.ladder3.restrictions},
                  {"3c", r.ladder3.to_generic},
                  {"3e", r.ladder3.stalk_maps},
                  {"3g", r.ladder3.maximal_monos},
                  {"3i", r.ladder3.unit_iso}};
  c["ladder4"] = {{"4a", r.ladder4.restrictions},
                  {"4c", r.ladder4.to_generic},
                  {"4e", r.ladder4.stalk_maps},
                  {"4f", r.ladder4.max_bijective},
                  {"4g", r.ladder4.coproduct_iso},
                  {"4i", r.ladder4.unit_iso}};
  c["pi0_size"] = r.pi0_size;
  out["classification"] = c;

  const GAction& eta = inst.sheaf.stalks[inst.ctx.site->generic()];
  json pi0_labels = json::array();
  for (const auto& orbit : pi0(inst.sheaf))
    pi0_labels.push_back(eta.labels[orbit.front()]);
  out["pi0"] = pi0_labels;

  json supp = json::array();
  for (int s : r.support.members) supp.push_back(inst.ctx.site->label(s));
  out["support"] = supp;

  out["digests"] = {{"input", digest(emit_instance(inst))}};
  return out;
}

json espace_json(const Instance& inst, const EtaleSpace& x) {
  json out;
  out["points"] = x.labels;
  json hasse = json::array();
  const std::size_t n = x.points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !x.leq[i][j]) continue;
      bool covering = true;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && x.leq[i][k] && x.leq[k][j]) covering = false;
      if (covering) hasse.push_back({x.labels[j], x.labels[i]});
    }
  out["hasse"] = hasse;
  json proj = json::object();
  for (std::size_t i = 0; i < n; ++i)
    proj[x.labels[i]] = inst.ctx.site->label(x.projection[i]);
  out["projection"] = proj;
  out["local_iso"] = x.local_iso();
  return out;
}

}  // namespace gshv
