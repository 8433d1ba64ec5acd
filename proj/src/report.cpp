#include "rct/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rct {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string csv_convergence(const ConvergenceReport& rep) {
  std::ostringstream os;
  os << "u,exact,asymptotic,ratio\n";
  for (std::size_t i = 0; i < rep.u_grid.size(); ++i)
    os << format_double(rep.u_grid[i]) << ',' << format_double(rep.exact[i])
       << ',' << format_double(rep.asympt[i]) << ','
       << format_double(rep.ratio[i]) << '\n';
  return os.str();
}

std::string csv_trajectory(const CriterionTrajectory& traj) {
  std::ostringstream os;
  os << "u,value,log_value\n";
  for (std::size_t i = 0; i < traj.u_grid.size(); ++i)
    os << format_double(traj.u_grid[i]) << ',' << format_double(traj.values[i])
       << ',' << format_double(traj.log_values[i]) << '\n';
  return os.str();
}

std::string csv_ruin(const std::vector<RuinRow>& rows) {
  std::ostringstream os;
  os << "u0,n,mc,mc_half_width,term_sum,asymptotic\n";
  for (const auto& r : rows) {
    os << format_double(r.u0) << ',' << r.n << ',';
    if (r.has_mc)
      os << format_double(r.mc) << ',' << format_double(r.mc_half_width);
    else
      os << ',';
    os << ',';
    if (r.has_term_sum) os << format_double(r.term_sum);
    os << ',';
    if (r.has_asymptotic) os << format_double(r.asymptotic);
    os << '\n';
  }
  return os.str();
}

std::string structured_text(const ReportMeta& meta, const std::string& csv) {
  std::ostringstream os;
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
  os << csv;
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace rct
