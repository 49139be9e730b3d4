#include "fluxlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fluxlab {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Columns a report needs per experiment kind.
const std::map<std::string, std::vector<std::string>>& expected_columns() {
    static const std::map<std::string, std::vector<std::string>> m = {
        {"fas-scan", {"R", "signed", "absolute", "momentum_prob", "abs_gap"}},
        {"sict", {"t", "position_prob", "momentum_prob", "gap"}},
        {"bohm", {"R", "n", "estimate", "ci95"}},
        {"remainder", {"c_f", "c_g", "sup_f_sampled", "sup_g_sampled"}},
        {"window", {"R", "t1", "t2", "absolute_flux"}},
    };
    return m;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("report: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("# fluxlab ", 0) != 0)
        throw std::runtime_error("report: " + path.string() +
                                 " is missing the '# fluxlab <kind> v1' header line");
    CsvTable t;
    {
        std::istringstream hs(line.substr(2));
        std::string tag, version;
        hs >> tag >> t.kind >> version;
        if (version != "v1")
            throw std::runtime_error("report: " + path.string() + " has unsupported version '" +
                                     version + "'");
    }
    if (!std::getline(in, line) || line.empty())
        throw std::runtime_error("report: " + path.string() + " has no column header");
    t.columns = split(line, ',');

    const auto expect = expected_columns().find(t.kind);
    if (expect == expected_columns().end())
        throw std::runtime_error("report: " + path.string() + " has unknown kind '" + t.kind + "'");
    std::vector<std::string> missing;
    for (const auto& c : expect->second)
        if (std::find(t.columns.begin(), t.columns.end(), c) == t.columns.end())
            missing.push_back(c);
    if (!missing.empty()) {
        std::string msg = "report: " + path.string() + " is missing expected column(s):";
        for (const auto& c : missing) msg += " " + c;
        throw std::runtime_error(msg);
    }

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != t.columns.size())
            throw std::runtime_error("report: " + path.string() + " row has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(t.columns.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                row.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw std::runtime_error("report: " + path.string() + " has non-numeric cell '" +
                                         c + "'");
            }
        }
        t.rows.push_back(std::move(row));
    }
    if (t.rows.empty())
        throw std::runtime_error("report: " + path.string() + " contains no data rows");
    return t;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2)
        throw std::invalid_argument("loglog_slope: need at least two positive (x, y) pairs");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= lx.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("loglog_slope: x values are all equal");
    return sxy / sxx;
}

std::string report_text(const std::vector<std::filesystem::path>& files) {
    if (files.empty()) throw std::invalid_argument("report: no input files given");
    std::ostringstream out;
    for (const auto& path : files) {
        const CsvTable t = read_csv(path);
        out << "== " << t.kind << "  (" << path.string() << ")\n";
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            out << (c ? "  " : "") << t.columns[c];
        out << '\n';
        out.setf(std::ios::scientific);
        out.precision(6);
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "  " : "") << row[c];
            out << '\n';
        }
        // Scan variable: first column when it is R or t and varies.
        if (!t.columns.empty() && (t.columns[0] == "R" || t.columns[0] == "t") &&
            t.rows.size() >= 2) {
            std::vector<double> xs;
            for (const auto& row : t.rows) xs.push_back(row[0]);
            out << "log-log slopes vs " << t.columns[0] << ":\n";
            for (std::size_t c = 1; c < t.columns.size(); ++c) {
                std::vector<double> ys;
                for (const auto& row : t.rows) ys.push_back(row[c]);
                out << "  " << t.columns[c] << ": ";
                try {
                    out << loglog_slope(xs, ys);
                } catch (const std::invalid_argument&) {
                    out << "n/a";
                }
                out << '\n';
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace fluxlab
