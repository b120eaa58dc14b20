#include "maglev/io.hpp"

#include "maglev/util.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "trajectory files are defined little-endian");

namespace maglev::io {

std::string table_to_csv(const Table& t) {
    std::string out;
    for (const auto& c : t.comments) out += "# " + c + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += t.columns[i];
        out += i + 1 < t.columns.size() ? ',' : '\n';
    }
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += format_double(row[i]);
            out += i + 1 < row.size() ? ',' : '\n';
        }
    }
    return out;
}

std::string table_to_json(const Table& t) {
    std::string out = "{\n  \"columns\": [";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += "\"" + t.columns[i] + "\"";
        if (i + 1 < t.columns.size()) out += ", ";
    }
    out += "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += "    [";
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            out += format_double(t.rows[r][i]);
            if (i + 1 < t.rows[r].size()) out += ", ";
        }
        out += r + 1 < t.rows.size() ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

namespace {

constexpr char kMagic[8] = {'M', 'A', 'G', 'T', 'R', 'J', '0', '1'};
const char* const kColumns[9] = {"t", "x", "y", "z", "vx", "vy", "vz", "theta", "theta_dot"};

template <typename T>
void put(std::string& buf, T v) {
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    buf.append(raw, sizeof(T));
}

template <typename T>
T take(const std::string& buf, std::size_t& off) {
    if (off + sizeof(T) > buf.size()) throw std::runtime_error("trajectory file truncated");
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

}  // namespace

void write_trajectory(const dynamics::Trajectory& traj, const std::string& path) {
    std::string buf;
    buf.append(kMagic, sizeof(kMagic));
    put<std::uint32_t>(buf, 1);  // schema version
    put<std::uint32_t>(buf, 9);  // column count
    put<double>(buf, traj.dt);
    put<double>(buf, traj.omega_trap);
    put<std::uint8_t>(buf, traj.escaped ? 1 : 0);
    put<std::uint64_t>(buf, traj.escape_step);
    put<std::uint64_t>(buf, traj.states.size());
    for (const auto* name : kColumns) {
        put<std::uint16_t>(buf, static_cast<std::uint16_t>(std::strlen(name)));
        buf.append(name);
    }
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const auto& s = traj.states[i];
        put<double>(buf, traj.t[i]);
        for (const double v : s.r) put<double>(buf, v);
        for (const double v : s.v) put<double>(buf, v);
        put<double>(buf, s.theta);
        put<double>(buf, s.theta_dot);
    }
    write_text_file(path, buf);
}

dynamics::Trajectory read_trajectory(const std::string& path) {
    const std::string buf = read_text_file(path);
    if (buf.size() < sizeof(kMagic) || std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a trajectory file: " + path);
    std::size_t off = sizeof(kMagic);
    const auto version = take<std::uint32_t>(buf, off);
    if (version != 1) throw std::runtime_error("unsupported trajectory schema version");
    const auto ncols = take<std::uint32_t>(buf, off);
    if (ncols != 9) throw std::runtime_error("unexpected trajectory column count");

    dynamics::Trajectory traj;
    traj.dt = take<double>(buf, off);
    traj.omega_trap = take<double>(buf, off);
    traj.escaped = take<std::uint8_t>(buf, off) != 0;
    traj.escape_step = take<std::uint64_t>(buf, off);
    const auto nrows = take<std::uint64_t>(buf, off);
    for (std::uint32_t c = 0; c < ncols; ++c) {
        const auto len = take<std::uint16_t>(buf, off);
        if (off + len > buf.size()) throw std::runtime_error("trajectory file truncated");
        off += len;  // names are fixed by the schema; skip
    }
    traj.t.resize(nrows);
    traj.states.resize(nrows);
    for (std::uint64_t i = 0; i < nrows; ++i) {
        traj.t[i] = take<double>(buf, off);
        auto& s = traj.states[i];
        for (double& v : s.r) v = take<double>(buf, off);
        for (double& v : s.v) v = take<double>(buf, off);
        s.theta = take<double>(buf, off);
        s.theta_dot = take<double>(buf, off);
    }
    return traj;
}

std::string trajectory_to_csv(const dynamics::Trajectory& traj) {
    Table t;
    t.columns.assign(std::begin(kColumns), std::end(kColumns));
    t.comments.push_back("dt_s = " + format_double(traj.dt));
    t.comments.push_back("omega_trap_rad_s = " + format_double(traj.omega_trap));
    if (traj.escaped)
        t.comments.push_back("escaped at step " + std::to_string(traj.escape_step));
    t.rows.reserve(traj.states.size());
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const auto& s = traj.states[i];
        t.rows.push_back({traj.t[i], s.r[0], s.r[1], s.r[2], s.v[0], s.v[1], s.v[2], s.theta,
                          s.theta_dot});
    }
    return table_to_csv(t);
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& vals) {
    vals.clear();
    std::size_t pos = 0;
    while (pos <= line.size()) {
        auto end = line.find(',', pos);
        if (end == std::string::npos) end = line.size();
        const std::string cell = line.substr(pos, end - pos);
        try {
            std::size_t used = 0;
            vals.push_back(std::stod(cell, &used));
        } catch (...) {
            return false;
        }
        pos = end + 1;
        if (end == line.size()) break;
    }
    return !vals.empty();
}

}  // namespace

analysis::TimeSeries read_timeseries_csv(const std::string& path, double sample_rate_hint) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    analysis::TimeSeries ts;
    ts.source = path;
    std::vector<double> times;
    std::string line;
    std::vector<double> vals;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!parse_row(line, vals)) continue;  // header or junk row
        if (vals.size() == 1) {
            ts.samples.push_back(vals[0]);
        } else {
            times.push_back(vals[0]);
            ts.samples.push_back(vals[1]);
        }
    }
    if (ts.samples.size() < 2) throw std::runtime_error("time series too short: " + path);
    if (!times.empty()) {
        if (times.size() != ts.samples.size())
            throw std::runtime_error("mixed column counts in: " + path);
        ts.sample_rate = static_cast<double>(times.size() - 1) / (times.back() - times.front());
    } else {
        if (!(sample_rate_hint > 0.0))
            throw std::runtime_error("single-column time series needs an explicit sample rate");
        ts.sample_rate = sample_rate_hint;
    }
    return ts;
}

analysis::TimeSeries timeseries_from_trajectory(const dynamics::Trajectory& traj, int column) {
    analysis::TimeSeries ts;
    ts.sample_rate = traj.sample_rate();
    ts.samples = traj.column(column);
    ts.source = "trajectory";
    return ts;
}

void read_xy_csv(const std::string& path, std::vector<double>& x, std::vector<double>& y) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::string line;
    std::vector<double> vals;
    x.clear();
    y.clear();
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!parse_row(line, vals)) continue;
        if (vals.size() < 2) throw std::runtime_error("expected two columns in: " + path);
        x.push_back(vals[0]);
        y.push_back(vals[1]);
    }
}

}  // namespace maglev::io
