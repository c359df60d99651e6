#include <exception>
#include <ostream>

#include "stringnet/clustering.hpp"
#include "stringnet_cli/commands.hpp"
#include "stringnet_cli/output.hpp"

namespace stringnet::cli {

int cmd_cluster(const ClusterOptions &opt, std::ostream &out, std::ostream &err) {
  if (!(opt.eps > 0.0) || opt.min_pts < 2 || !(opt.phi > 0.0 && opt.phi < 1.0)) {
    err << "invalid cluster flags: need eps > 0, min-pts >= 2, 0 < phi < 1\n";
    return kExitInvalidInput;
  }
  std::vector<PointRow> rows;
  try {
    rows = parse_point_csv(read_file(opt.input));
  } catch (const RowError &e) {
    err << opt.input.string() << ": " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception &e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }

  std::vector<StatePoint> pts;
  pts.reserve(rows.size());
  for (const auto &r : rows) pts.push_back({{r.rx, r.ry, r.vx, r.vy}});
  const auto labels = dbscan_labels(pts, opt.eps, opt.min_pts, opt.phi);

  std::string csv;
  if (!rows.empty()) {
    csv = "id,cluster_id\n";
    for (std::size_t i = 0; i < rows.size(); ++i) csv += rows[i].id + "," + std::to_string(labels[i]) + "\n";
  }
  try {
    if (opt.out) write_file(*opt.out / "clusters.csv", csv);
    else out << csv;
  } catch (const std::exception &e) {
    err << e.what() << "\n";
    return kExitRunFailed;
  }
  return kExitOk;
}

}  // namespace stringnet::cli
