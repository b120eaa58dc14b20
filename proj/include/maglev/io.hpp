#pragma once

#include "maglev/analysis.hpp"
#include "maglev/dynamics.hpp"

#include <string>
#include <vector>

namespace maglev::io {

/// Plot-ready numeric table; comments become leading "# ..." lines in CSV.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;
};

std::string table_to_csv(const Table& t);
std::string table_to_json(const Table& t);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Columnar binary trajectory: little-endian, 64-bit floats, header with
/// schema version, dt and column names.
void write_trajectory(const dynamics::Trajectory& traj, const std::string& path);
dynamics::Trajectory read_trajectory(const std::string& path);
std::string trajectory_to_csv(const dynamics::Trajectory& traj);

/// CSV time series: one or two numeric columns (value | t,value); header row
/// optional. With two columns the rate comes from the time spacing,
/// otherwise sample_rate_hint must be given.
analysis::TimeSeries read_timeseries_csv(const std::string& path, double sample_rate_hint = 0.0);

analysis::TimeSeries timeseries_from_trajectory(const dynamics::Trajectory& traj, int column);

/// Two-column CSV used by the thermo fit: p_laser_W, omega_rad_s.
void read_xy_csv(const std::string& path, std::vector<double>& x, std::vector<double>& y);

}  // namespace maglev::io
