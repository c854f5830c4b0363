#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace secsym::runner {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void add_check(ExperimentResult& result, const std::string& name, double value, double threshold,
               bool ok) {
    Json check;
    check["name"] = name;
    check["value"] = value;
    check["threshold"] = threshold;
    check["pass"] = ok;
    result.report["checks"].push_back(std::move(check));
    result.pass = result.pass && ok;
}

void add_residual_check(ExperimentResult& result, const std::string& name, double value,
                        double threshold) {
    add_check(result, name, value, threshold, std::abs(value) <= threshold);
}

std::string csv_table(const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < headers.size(); ++i) {
        if (i) out.push_back(',');
        out += headers[i];
    }
    out.push_back('\n');
    for (const auto& row : rows) {
        if (row.size() != headers.size())
            throw std::invalid_argument("csv_table: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += format_double(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

void write_result(const ExperimentResult& result, const std::string& experiment,
                  const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir / (experiment + "_report.json"), std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report in " + out_dir.string());
        out << result.report.dump(2) << "\n";
    }
    for (const auto& [name, contents] : result.csv_files) {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + name + " in " + out_dir.string());
        out << contents;
    }
}

} // namespace secsym::runner
