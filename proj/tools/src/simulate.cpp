#include <cmath>
#include <exception>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "stringnet/config_io.hpp"
#include "stringnet/dynamics.hpp"
#include "stringnet/engine.hpp"
#include "stringnet_cli/commands.hpp"
#include "stringnet_cli/output.hpp"

namespace stringnet::cli {

namespace {

std::string quoted(const std::string &s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void append_rows(std::string &csv, const Simulation &sim) {
  const std::string t = fmt(sim.time());
  const auto &a = sim.attackers();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int g = sim.group_of_attacker(static_cast<int>(i));
    csv += t + "," + std::to_string(i) + ",attacker," + fmt(a[i].r.x) + "," + fmt(a[i].r.y) + "," + fmt(a[i].v.x) +
           "," + fmt(a[i].v.y) + "," + phase_name(sim.phase_of_group(g)) + "," + std::to_string(g) + "," +
           std::to_string(sim.swarm_of_attacker(static_cast<int>(i))) + "\n";
  }
  const auto &d = sim.defenders();
  for (std::size_t j = 0; j < d.size(); ++j) {
    const int g = sim.group_of_defender(static_cast<int>(j));
    int swarm = -1;
    for (const auto &grp : sim.groups())
      if (grp.id == g && grp.swarm_ids.size() == 1) swarm = grp.swarm_ids[0];
    csv += t + "," + std::to_string(j) + ",defender," + fmt(d[j].r.x) + "," + fmt(d[j].r.y) + "," + fmt(d[j].v.x) +
           "," + fmt(d[j].v.y) + "," + phase_name(sim.phase_of_group(g)) + "," + std::to_string(g) + "," +
           std::to_string(swarm) + "\n";
  }
}

struct NetSnapshot {
  std::vector<std::pair<Vec2, Vec2>> edges;
};

NetSnapshot snapshot(const Simulation &sim) {
  NetSnapshot s;
  for (const auto &[a, b] : sim.strings())
    s.edges.emplace_back(sim.defenders()[static_cast<std::size_t>(a)].r, sim.defenders()[static_cast<std::size_t>(b)].r);
  return s;
}

std::string trajectory_svg(const ScenarioConfig &cfg, const std::vector<std::vector<Vec2>> &attacker_paths,
                           const std::vector<std::vector<Vec2>> &defender_paths, const std::vector<NetSnapshot> &nets) {
  Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
  auto grow = [&](Vec2 p, double r) {
    lo = {std::min(lo.x, p.x - r), std::min(lo.y, p.y - r)};
    hi = {std::max(hi.x, p.x + r), std::max(hi.y, p.y + r)};
  };
  grow(cfg.protected_area.center, cfg.protected_area.radius);
  for (const auto &s : cfg.safe_areas) grow(s.center, s.radius);
  for (const auto &p : attacker_paths)
    for (const auto &q : p) grow(q, 1.0);
  for (const auto &p : defender_paths)
    for (const auto &q : p) grow(q, 1.0);

  Svg svg(900, 900, lo, hi);
  svg.circle(cfg.protected_area.center, cfg.protected_area.radius, "#b22222", "#f4cccc", 1.5, 0.6);
  for (const auto &s : cfg.safe_areas) svg.circle(s.center, s.radius, "#2e7d32", "#d9ead3", 1.5, 0.6);
  for (const auto &p : defender_paths) svg.polyline(p, "#1f5fbf", 0.8, 0.7);
  for (const auto &p : attacker_paths) svg.polyline(p, "#d62728", 0.8, 0.7);
  for (std::size_t k = 0; k < nets.size(); ++k) {
    const bool last = k + 1 == nets.size();
    for (const auto &[a, b] : nets[k].edges) svg.line(a, b, last ? "#000000" : "#777777", last ? 1.6 : 0.8);
  }
  for (const auto &p : defender_paths)
    if (!p.empty()) svg.dot(p.back(), 2.5, "#1f5fbf");
  for (const auto &p : attacker_paths)
    if (!p.empty()) svg.dot(p.back(), 2.5, "#d62728");
  svg.raw("<text x=\"40\" y=\"24\" font-size=\"13\" font-family=\"sans-serif\">"
          "<tspan fill=\"#d62728\">attackers</tspan>  <tspan fill=\"#1f5fbf\">defenders</tspan>  "
          "strings (grey: when established, black: final)</text>");
  return svg.str();
}

}  // namespace

int cmd_simulate(const SimulateOptions &opt, std::ostream &out, std::ostream &err) {
  ScenarioConfig cfg;
  try {
    cfg = load_config(opt.scenario);
  } catch (const ConfigError &e) {
    err << "invalid scenario " << opt.scenario.string() << ":\n";
    for (const auto &v : e.violations()) err << "  - " << v << "\n";
    return kExitInvalidInput;
  } catch (const std::exception &e) {
    err << "cannot load scenario: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.log_stride < 1) {
    err << "--log-stride must be at least 1\n";
    return kExitInvalidInput;
  }
  const double max_time = opt.max_time.value_or(cfg.max_time);

  try {
    Simulation sim(cfg);

    std::string traj = "t,agent_id,class,x,y,vx,vy,phase,group_id,swarm_id\n";
    std::string stretch = "t,max_stretch\n";
    append_rows(traj, sim);
    const std::int64_t plot_stride = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::lround(0.25 / cfg.dt)));
    std::vector<std::vector<Vec2>> apaths(sim.attackers().size()), dpaths(sim.defenders().size());
    auto sample = [&](const Simulation &s) {
      for (std::size_t i = 0; i < apaths.size(); ++i) apaths[i].push_back(s.attackers()[i].r);
      for (std::size_t j = 0; j < dpaths.size(); ++j) dpaths[j].push_back(s.defenders()[j].r);
    };
    sample(sim);
    std::vector<NetSnapshot> nets;
    std::size_t seen_events = 0;

    const auto &m = sim.run(max_time, [&](const Simulation &s) {
      stretch += fmt(s.time()) + "," + fmt(s.metrics().max_string_stretch.back()) + "\n";
      if (s.tick_count() % opt.log_stride == 0 || s.finished()) append_rows(traj, s);
      if (s.tick_count() % plot_stride == 0 || s.finished()) sample(s);
      const auto &ev = s.events();
      for (; seen_events < ev.size(); ++seen_events)
        if (ev[seen_events].kind == "net_established" && ev[seen_events].detail.rfind("closed", 0) == 0)
          nets.push_back(snapshot(s));
    });
    nets.push_back(snapshot(sim));

    std::string events = "tick,t,event,group_id,swarm_id,detail\n";
    for (const auto &e : sim.events())
      events += std::to_string(e.tick) + "," + fmt(e.t) + "," + e.kind + "," + std::to_string(e.group_id) + "," +
                std::to_string(e.swarm_id) + "," + quoted(e.detail) + "\n";

    nlohmann::ordered_json j;
    j["herd_success"] = m.herd_success;
    j["timed_out"] = m.timed_out;
    j["final_time"] = m.final_time;
    j["ticks"] = sim.tick_count();
    j["seed"] = cfg.seed;
    j["time_to_gather"] = m.time_to_gather;
    j["groups"] = nlohmann::ordered_json::array();
    for (const auto &[id, g] : m.groups)
      j["groups"].push_back({{"group_id", id},
                             {"size", g.size},
                             {"safe_area", g.safe_area},
                             {"time_to_seek", g.seek},
                             {"time_to_enclose", g.enclose},
                             {"time_to_herd", g.herd_done}});
    j["split_event_count"] = m.split_event_count;
    j["breach_count"] = m.breach_count;
    j["closed_nets_formed"] = m.closed_nets_formed;
    double max_stretch = 0.0;
    for (double s : m.max_string_stretch) max_stretch = std::max(max_stretch, s);
    j["max_string_stretch"] = max_stretch;
    j["max_closed_edge"] = m.max_closed_edge;
    j["containment_violations"] = m.containment_violations;
    j["attackers_in_safe_areas"] = m.attackers_in_safe_areas;
    j["backstops"] = {{"string_projections", m.string_projections},
                      {"containment_projections", m.containment_projections},
                      {"crossing_reflections", m.crossing_reflections}};

    write_file(opt.out / "trajectory.csv", traj);
    write_file(opt.out / "events.csv", events);
    write_file(opt.out / "stretch.csv", stretch);
    write_file(opt.out / "metrics.json", j.dump(2) + "\n");
    if (opt.plot) write_file(opt.out / "trajectory.svg", trajectory_svg(cfg, apaths, dpaths, nets));

    out << "t=" << fmt(m.final_time) << " s, closed nets " << m.closed_nets_formed << ", attackers in safe areas "
        << m.attackers_in_safe_areas << "/" << cfg.n_a << ", breaches " << m.breach_count << "\n";
    if (m.herd_success) return kExitOk;
    if (m.timed_out) err << "timeout: not every swarm was herded within " << fmt(max_time) << " s\n";
    else if (m.breach_count > 0) err << "protected area breached\n";
    else err << "run ended without herding every swarm\n";
    return kExitRunFailed;
  } catch (const ConfigError &e) {
    err << "invalid scenario " << opt.scenario.string() << ":\n";
    for (const auto &v : e.violations()) err << "  - " << v << "\n";
    return kExitInvalidInput;
  } catch (const std::exception &e) {
    err << "simulation failed: " << e.what() << "\n";
    return kExitRunFailed;
  }
}

}  // namespace stringnet::cli
