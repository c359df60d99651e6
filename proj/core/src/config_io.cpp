#include "stringnet/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace stringnet {

using nlohmann::json;

namespace {

void reject_unknown(const json &obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigParseError(std::string(where) + ": expected an object");
  for (const auto &[key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigParseError(std::string(where) + ": unknown field '" + key + "'");
  }
}

const json &field(const json &obj, std::string_view where, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigParseError(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

double as_number(const json &j, std::string_view what) {
  if (!j.is_number()) throw ConfigParseError(std::string(what) + ": expected a number");
  return j.get<double>();
}

int as_int(const json &j, std::string_view what) {
  if (!j.is_number_integer()) throw ConfigParseError(std::string(what) + ": expected an integer");
  return j.get<int>();
}

Vec2 as_vec2(const json &j, std::string_view what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigParseError(std::string(what) + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json from_vec2(Vec2 v) { return json::array({v.x, v.y}); }

template <typename T>
void read_opt(const json &obj, const char *key, T &out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if constexpr (std::is_same_v<T, int>) {
    out = as_int(*it, key);
  } else {
    out = as_number(*it, key);
  }
}

Disk parse_disk(const json &j, std::string_view where) {
  reject_unknown(j, where, {"center", "radius"});
  return {as_vec2(field(j, where, "center"), "center"), as_number(field(j, where, "radius"), "radius")};
}

json dump_disk(const Disk &d) { return {{"center", from_vec2(d.center)}, {"radius", d.radius}}; }

std::vector<AgentState> parse_agents(const json &j, std::string_view where) {
  if (!j.is_array()) throw ConfigParseError(std::string(where) + ": expected an array");
  std::vector<AgentState> out;
  for (const auto &a : j) {
    reject_unknown(a, where, {"r", "v"});
    AgentState s;
    s.r = as_vec2(field(a, where, "r"), "r");
    if (a.contains("v")) s.v = as_vec2(a["v"], "v");
    out.push_back(s);
  }
  return out;
}

json dump_agents(const std::vector<AgentState> &agents) {
  json arr = json::array();
  for (const auto &s : agents) arr.push_back({{"r", from_vec2(s.r)}, {"v", from_vec2(s.v)}});
  return arr;
}

AttackerPolicyConfig parse_policy(const json &j) {
  constexpr std::string_view where = "attacker_policy";
  reject_unknown(j, where,
                 {"kind", "goal_gain", "cohesion_gain", "alignment_gain", "separation_gain",
                  "separation_distance", "avoidance_gain", "wander_gain", "waypoint_radius", "blockage_cone",
                  "divergence_gain", "splits"});
  AttackerPolicyConfig p;
  if (auto it = j.find("kind"); it != j.end()) {
    const auto kind = it->get<std::string>();
    if (kind == "flock") p.kind = AttackerPolicyKind::Flock;
    else if (kind == "split_on_block") p.kind = AttackerPolicyKind::SplitOnBlock;
    else throw ConfigParseError("attacker_policy.kind: expected 'flock' or 'split_on_block'");
  }
  read_opt(j, "goal_gain", p.goal_gain);
  read_opt(j, "cohesion_gain", p.cohesion_gain);
  read_opt(j, "alignment_gain", p.alignment_gain);
  read_opt(j, "separation_gain", p.separation_gain);
  read_opt(j, "separation_distance", p.separation_distance);
  read_opt(j, "avoidance_gain", p.avoidance_gain);
  read_opt(j, "wander_gain", p.wander_gain);
  read_opt(j, "waypoint_radius", p.waypoint_radius);
  read_opt(j, "blockage_cone", p.blockage_cone);
  read_opt(j, "divergence_gain", p.divergence_gain);
  if (auto it = j.find("splits"); it != j.end()) {
    if (!it->is_array()) throw ConfigParseError("attacker_policy.splits: expected an array");
    for (const auto &s : *it) {
      reject_unknown(s, "attacker_policy.splits[]", {"time", "members", "waypoints"});
      AttackerSplit split;
      split.time = as_number(field(s, "splits[]", "time"), "time");
      for (const auto &m : field(s, "splits[]", "members")) split.members.push_back(as_int(m, "members"));
      if (s.contains("waypoints"))
        for (const auto &w : s["waypoints"]) split.waypoints.push_back(as_vec2(w, "waypoints"));
      p.splits.push_back(std::move(split));
    }
  }
  return p;
}

json dump_policy(const AttackerPolicyConfig &p) {
  json splits = json::array();
  for (const auto &s : p.splits) {
    json wps = json::array();
    for (const auto &w : s.waypoints) wps.push_back(from_vec2(w));
    splits.push_back({{"time", s.time}, {"members", s.members}, {"waypoints", wps}});
  }
  return {{"kind", p.kind == AttackerPolicyKind::Flock ? "flock" : "split_on_block"},
          {"goal_gain", p.goal_gain},
          {"cohesion_gain", p.cohesion_gain},
          {"alignment_gain", p.alignment_gain},
          {"separation_gain", p.separation_gain},
          {"separation_distance", p.separation_distance},
          {"avoidance_gain", p.avoidance_gain},
          {"wander_gain", p.wander_gain},
          {"waypoint_radius", p.waypoint_radius},
          {"blockage_cone", p.blockage_cone},
          {"divergence_gain", p.divergence_gain},
          {"splits", splits}};
}

}  // namespace

ScenarioConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ConfigParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  constexpr std::string_view where = "scenario";
  reject_unknown(j, where,
                 {"n_a", "n_d", "c_d", "u_bar_a", "u_bar_d", "rho_a", "rho_d", "rho_d_s", "rho_a_s", "protected",
                  "safe_areas", "r_bar_s", "r_under_s", "eps_v", "b_d", "r_hat_spacing", "phi", "m_pts", "rho_df_g",
                  "attacker_policy", "attackers", "defenders", "dt", "seed", "k_p", "k_v", "n_ac_min",
                  "v_herd_ratio", "eps_rule", "reassign_scope", "d_act", "max_time"});

  try {
    ScenarioConfig c;
    c.n_a = as_int(field(j, where, "n_a"), "n_a");
    c.n_d = as_int(field(j, where, "n_d"), "n_d");
    c.c_d = as_number(field(j, where, "c_d"), "c_d");
    c.u_bar_a = as_number(field(j, where, "u_bar_a"), "u_bar_a");
    c.u_bar_d = as_number(field(j, where, "u_bar_d"), "u_bar_d");
    read_opt(j, "rho_a", c.rho_a);
    read_opt(j, "rho_d", c.rho_d);
    read_opt(j, "rho_d_s", c.rho_d_s);
    read_opt(j, "rho_a_s", c.rho_a_s);
    c.protected_area = parse_disk(field(j, where, "protected"), "protected");
    const auto &safe = field(j, where, "safe_areas");
    if (!safe.is_array()) throw ConfigParseError("safe_areas: expected an array");
    for (const auto &s : safe) c.safe_areas.push_back(parse_disk(s, "safe_areas[]"));
    c.r_bar_s = as_number(field(j, where, "r_bar_s"), "r_bar_s");
    c.r_under_s = as_number(field(j, where, "r_under_s"), "r_under_s");
    read_opt(j, "eps_v", c.eps_v);
    read_opt(j, "b_d", c.b_d);
    if (j.contains("r_hat_spacing")) c.r_hat_spacing = as_number(j["r_hat_spacing"], "r_hat_spacing");
    read_opt(j, "phi", c.phi);
    read_opt(j, "m_pts", c.m_pts);
    if (auto it = j.find("rho_df_g"); it != j.end()) {
      if (it->is_string()) {
        if (it->get<std::string>() != "auto") throw ConfigParseError("rho_df_g: expected a number or \"auto\"");
      } else {
        c.rho_df_g = as_number(*it, "rho_df_g");
      }
    }
    if (j.contains("attacker_policy")) c.attacker_policy = parse_policy(j["attacker_policy"]);
    c.attackers = parse_agents(field(j, where, "attackers"), "attackers");
    c.defenders = parse_agents(field(j, where, "defenders"), "defenders");
    read_opt(j, "dt", c.dt);
    if (auto it = j.find("seed"); it != j.end()) {
      if (!it->is_number_unsigned() && !it->is_number_integer()) throw ConfigParseError("seed: expected an integer");
      c.seed = it->get<std::uint64_t>();
    }
    read_opt(j, "k_p", c.k_p);
    read_opt(j, "k_v", c.k_v);
    read_opt(j, "n_ac_min", c.n_ac_min);
    read_opt(j, "v_herd_ratio", c.v_herd_ratio);
    if (auto it = j.find("eps_rule"); it != j.end()) {
      const auto s = it->get<std::string>();
      if (s == "chain") c.eps_rule = EpsRule::Chain;
      else if (s == "half") c.eps_rule = EpsRule::HalfMinPts;
      else throw ConfigParseError("eps_rule: expected 'chain' or 'half'");
    }
    if (auto it = j.find("reassign_scope"); it != j.end()) {
      const auto s = it->get<std::string>();
      if (s == "group") c.reassign_scope = ReassignScope::Group;
      else if (s == "global") c.reassign_scope = ReassignScope::Global;
      else throw ConfigParseError("reassign_scope: expected 'group' or 'global'");
    }
    if (j.contains("d_act")) c.d_act = as_number(j["d_act"], "d_act");
    read_opt(j, "max_time", c.max_time);
    return c;
  } catch (const json::exception &e) {
    throw ConfigParseError(std::string("scenario: ") + e.what());
  }
}

std::string dump_config(const ScenarioConfig &c) {
  json j;
  j["n_a"] = c.n_a;
  j["n_d"] = c.n_d;
  j["c_d"] = c.c_d;
  j["u_bar_a"] = c.u_bar_a;
  j["u_bar_d"] = c.u_bar_d;
  j["rho_a"] = c.rho_a;
  j["rho_d"] = c.rho_d;
  j["rho_d_s"] = c.rho_d_s;
  j["rho_a_s"] = c.rho_a_s;
  j["protected"] = dump_disk(c.protected_area);
  j["safe_areas"] = json::array();
  for (const auto &s : c.safe_areas) j["safe_areas"].push_back(dump_disk(s));
  j["r_bar_s"] = c.r_bar_s;
  j["r_under_s"] = c.r_under_s;
  j["eps_v"] = c.eps_v;
  j["b_d"] = c.b_d;
  if (c.r_hat_spacing) j["r_hat_spacing"] = *c.r_hat_spacing;
  j["phi"] = c.phi;
  j["m_pts"] = c.m_pts;
  if (c.rho_df_g) j["rho_df_g"] = *c.rho_df_g;
  else j["rho_df_g"] = "auto";
  j["attacker_policy"] = dump_policy(c.attacker_policy);
  j["attackers"] = dump_agents(c.attackers);
  j["defenders"] = dump_agents(c.defenders);
  j["dt"] = c.dt;
  j["seed"] = c.seed;
  j["k_p"] = c.k_p;
  j["k_v"] = c.k_v;
  j["n_ac_min"] = c.n_ac_min;
  j["v_herd_ratio"] = c.v_herd_ratio;
  j["eps_rule"] = c.eps_rule == EpsRule::Chain ? "chain" : "half";
  j["reassign_scope"] = c.reassign_scope == ReassignScope::Group ? "group" : "global";
  if (c.d_act) j["d_act"] = *c.d_act;
  j["max_time"] = c.max_time;
  return j.dump(2) + "\n";
}

ScenarioConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void save_config(const ScenarioConfig &cfg, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write scenario file '" + path.string() + "'");
  out << dump_config(cfg);
}

}  // namespace stringnet
