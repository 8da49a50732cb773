#include "lgt/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lgt {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": cannot parse number '" + s + "'");
    }
}

int parse_int(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": cannot parse integer '" + s + "'");
    }
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << content;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw std::runtime_error("write failed for '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

std::vector<TimeSeries> load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");

    std::vector<TimeSeries> out;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || (row == 1 && line.rfind("id,", 0) == 0)) continue;
        const std::string where = "row " + std::to_string(row);
        const auto fields = split_fields(line);
        if (fields.size() < 5)
            throw std::runtime_error(where + ": expected id,category,frequency,horizon and at least one value");

        TimeSeries ts;
        ts.id = fields[0];
        ts.category = fields[1];
        ts.frequency = parse_int(fields[2], where);
        ts.horizon = parse_int(fields[3], where);
        ts.values.reserve(fields.size() - 4);
        for (size_t i = 4; i < fields.size(); ++i) {
            if (fields[i].empty()) continue;  // ragged tail padding
            ts.values.push_back(parse_double(fields[i], where));
        }
        if (ts.values.empty())
            throw std::runtime_error(where + ": no values");
        if (ts.frequency < 1 || ts.horizon < 1)
            throw std::runtime_error(where + ": frequency and horizon must be >= 1");
        for (double v : ts.values)
            if (!std::isfinite(v))
                throw std::runtime_error("series '" + ts.id + "': non-finite value (" + where + ")");
        // Structural fitting invariants (length, full cycles) are checked
        // where a series is actually used, so one short row does not
        // abort a whole batch.
        out.push_back(std::move(ts));
    }
    return out;
}

void save_dataset(const std::string& path, const std::vector<TimeSeries>& dataset) {
    std::ostringstream out;
    out << "id,category,frequency,horizon,v1,v2,...\n";
    for (const auto& ts : dataset) {
        out << ts.id << ',' << ts.category << ',' << ts.frequency << ',' << ts.horizon;
        for (double v : ts.values) out << ',' << format_double(v);
        out << '\n';
    }
    write_file_atomic(path, out.str());
}

}  // namespace lgt
