#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <ostream>
#include <random>

#include "stringnet/assignment.hpp"
#include "stringnet/random.hpp"
#include "stringnet_cli/commands.hpp"
#include "stringnet_cli/output.hpp"

namespace stringnet::cli {

namespace {

struct Instance {
  AttackerSummary attackers;
  DefenderSummary defenders;
};

// Defenders strung along a slightly noisy line, swarms scattered in front of it.
Instance random_instance(std::mt19937_64 &rng, int n_swarms, int n_defenders) {
  Instance in;
  const double width = 1.5 * n_defenders;
  for (int j = 0; j < n_defenders; ++j) {
    in.defenders.positions.push_back({-0.5 * width + 1.5 * j + uniform(rng, -0.2, 0.2), uniform(rng, -0.5, 0.5)});
    in.defenders.ids.push_back(j);
  }
  std::vector<int> sizes(static_cast<std::size_t>(n_swarms), 1);
  for (int extra = n_defenders - n_swarms; extra > 0; --extra) ++sizes[static_cast<std::size_t>(uniform_int(rng, 0, n_swarms - 1))];
  for (int k = 0; k < n_swarms; ++k) {
    in.attackers.centers.push_back({uniform(rng, -width, width), uniform(rng, 5.0, 5.0 + width)});
    in.attackers.sizes.push_back(sizes[static_cast<std::size_t>(k)]);
    in.attackers.ids.push_back(k);
  }
  return in;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Row {
  int n_swarms;
  double exact_time, hier_time, gap;
};

std::string bench_svg(const std::vector<Row> &rows, bool timing) {
  std::map<int, std::vector<const Row *>> by_n;
  for (const auto &r : rows) by_n[r.n_swarms].push_back(&r);

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"420\" viewBox=\"0 0 960 420\">\n"
                  "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (by_n.empty()) return s + "<text x=\"40\" y=\"40\" font-family=\"sans-serif\">no instances</text>\n</svg>\n";

  const int n_lo = by_n.begin()->first, n_hi = by_n.rbegin()->first;
  auto x_of = [&](int n, double x0) { return x0 + (n_hi == n_lo ? 190.0 : 380.0 * (n - n_lo) / (n_hi - n_lo)); };

  auto panel = [&](double x0, const std::string &title, const std::string &ylabel,
                   const std::vector<std::pair<std::string, std::map<int, double>>> &series, bool log_scale) {
    double lo = 1e300, hi = -1e300;
    for (const auto &[name, pts] : series)
      for (const auto &[n, v] : pts) {
        const double y = log_scale ? std::log10(std::max(v, 1e-9)) : v;
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
    if (!log_scale) lo = std::min(lo, 0.0);
    if (hi - lo < 1e-9) hi = lo + 1.0;
    auto y_of = [&](double v) {
      const double y = log_scale ? std::log10(std::max(v, 1e-9)) : v;
      return 360.0 - 300.0 * (y - lo) / (hi - lo);
    };
    s += "<text x=\"" + px(x0) + "\" y=\"30\" font-size=\"14\" font-family=\"sans-serif\">" + title + "</text>\n";
    s += "<line x1=\"" + px(x0) + "\" y1=\"360\" x2=\"" + px(x0 + 380) + "\" y2=\"360\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + px(x0) + "\" y1=\"60\" x2=\"" + px(x0) + "\" y2=\"360\" stroke=\"black\"/>\n";
    for (const auto &[n, _] : by_n)
      s += "<text x=\"" + px(x_of(n, x0)) + "\" y=\"378\" font-size=\"11\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">" + std::to_string(n) + "</text>\n";
    s += "<text x=\"" + px(x0 + 190) + "\" y=\"400\" font-size=\"12\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">number of swarms</text>\n";
    s += "<text x=\"" + px(x0 + 4) + "\" y=\"56\" font-size=\"11\" font-family=\"sans-serif\">" + ylabel + " (" +
         (log_scale ? "10^" + fmt(lo) + " .. 10^" + fmt(hi) : fmt(lo) + " .. " + fmt(hi)) + ")</text>\n";
    const char *colors[] = {"#d62728", "#1f5fbf"};
    int c = 0;
    for (const auto &[name, pts] : series) {
      std::string poly;
      for (const auto &[n, v] : pts) {
        poly += px(x_of(n, x0)) + "," + px(y_of(v)) + " ";
        s += "<circle cx=\"" + px(x_of(n, x0)) + "\" cy=\"" + px(y_of(v)) + "\" r=\"3\" fill=\"" + colors[c] + "\"/>\n";
      }
      s += "<polyline fill=\"none\" stroke=\"" + std::string(colors[c]) + "\" stroke-width=\"1.5\" points=\"" + poly +
           "\"/>\n";
      s += "<text x=\"" + px(x0 + 260) + "\" y=\"" + px(80.0 + 16 * c) + "\" font-size=\"12\" fill=\"" + colors[c] +
           "\" font-family=\"sans-serif\">" + name + "</text>\n";
      ++c;
    }
  };

  std::map<int, double> t_exact, t_hier, gap;
  for (const auto &[n, rs] : by_n) {
    std::vector<double> a, b, g;
    for (const auto *r : rs) {
      a.push_back(r->exact_time);
      b.push_back(r->hier_time);
      g.push_back(r->gap);
    }
    t_exact[n] = median(a);
    t_hier[n] = median(b);
    gap[n] = median(g);
  }
  if (timing)
    panel(40, "median run time", "seconds, log", {{"exact", t_exact}, {"hierarchical", t_hier}}, true);
  else
    s += "<text x=\"40\" y=\"30\" font-size=\"14\" font-family=\"sans-serif\">run time not recorded</text>\n";
  panel(520, "median cost gap", "percent", {{"hierarchical vs exact", gap}}, false);
  return s + "</svg>\n";
}

}  // namespace

int cmd_bench_assign(const BenchAssignOptions &opt, std::ostream &out, std::ostream &err) {
  if (opt.n_swarms_min < 1 || opt.n_swarms_max < opt.n_swarms_min || opt.instances < 0 || opt.defenders < 0 ||
      opt.n_ac_min < 1) {
    err << "invalid bench-assign flags: need 1 <= n-swarms-min <= n-swarms-max, instances >= 0, defenders >= 0\n";
    return kExitInvalidInput;
  }
  if (opt.defenders > 0 && opt.defenders < opt.n_swarms_max) {
    err << "--defenders must be at least --n-swarms-max\n";
    return kExitInvalidInput;
  }
  using clock = std::chrono::steady_clock;
  std::mt19937_64 rng(opt.seed);
  std::string csv = "instance_id,n_swarms,exact_cost,exact_time_s,hier_cost,hier_time_s,gap_percent\n";
  std::vector<Row> rows;
  int id = 0;
  try {
    for (int n = opt.n_swarms_min; n <= opt.n_swarms_max; ++n) {
      const int n_def = opt.defenders > 0 ? opt.defenders : 6 * n;
      for (int k = 0; k < opt.instances; ++k) {
        const auto in = random_instance(rng, n, n_def);
        const auto inst = make_instance(in.attackers, in.defenders);

        const auto t0 = clock::now();
        const auto exact = solve_exact(inst);
        const auto t1 = clock::now();
        const auto hier = solve_hierarchical(in.attackers, in.defenders, opt.n_ac_min);
        const auto t2 = clock::now();

        const double ce = assignment_cost(inst, exact);
        const double ch = assignment_cost(inst, hier);
        const double te = opt.timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
        const double th = opt.timing ? std::chrono::duration<double>(t2 - t1).count() : 0.0;
        const double gap = ce > 0.0 ? 100.0 * (ch - ce) / ce : 0.0;
        rows.push_back({n, te, th, gap});
        csv += std::to_string(id++) + "," + std::to_string(n) + "," + fmt(ce) + "," + fmt(te) + "," + fmt(ch) + "," +
               fmt(th) + "," + fmt(gap) + "\n";
      }
    }
    write_file(opt.out / "bench_assign.csv", csv);
    write_file(opt.out / "bench_assign.svg", bench_svg(rows, opt.timing));
  } catch (const std::exception &e) {
    err << "bench-assign failed: " << e.what() << "\n";
    return kExitRunFailed;
  }
  out << rows.size() << " instances\n";
  return kExitOk;
}

}  // namespace stringnet::cli
