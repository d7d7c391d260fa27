#include "nr/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nr/errors.hpp"

namespace nr {

using nlohmann::json;

ComplexMatrix parse_matrix_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("matrix file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw DomainError("matrix file must be an object with fields dim, re, im");
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
        throw DomainError("matrix field 'dim' must be a positive integer");
    const int n = j["dim"].get<int>();

    auto read_part = [n](const json& part, const char* name) {
        if (!part.is_array() || static_cast<int>(part.size()) != n) {
            std::ostringstream os;
            os << "matrix field '" << name << "' must be a " << n << "x" << n << " array";
            throw DomainError(os.str());
        }
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < n; ++i) {
            const json& row = part[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<int>(row.size()) != n) {
                std::ostringstream os;
                os << "matrix field '" << name << "' row " << i << " must have " << n << " entries";
                throw DomainError(os.str());
            }
            std::vector<double> vals;
            for (int k = 0; k < n; ++k) {
                const json& cell = row[static_cast<std::size_t>(k)];
                if (!cell.is_number()) {
                    std::ostringstream os;
                    os << "matrix field '" << name << "' entry (" << i << "," << k
                       << ") is not a number";
                    throw DomainError(os.str());
                }
                const double v = cell.get<double>();
                if (!std::isfinite(v)) {
                    std::ostringstream os;
                    os << "matrix field '" << name << "' entry (" << i << "," << k
                       << ") is not finite";
                    throw DomainError(os.str());
                }
                vals.push_back(v);
            }
            rows.push_back(std::move(vals));
        }
        return rows;
    };

    const auto re = read_part(j["re"], "re");
    const auto im = read_part(j["im"], "im");
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            a(i, k) = Complex(re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                              im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    return a;
}

ComplexMatrix load_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open matrix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_json(buf.str());
}

std::string matrix_to_json(const ComplexMatrix& a) {
    const int n = a.dim();
    json re = json::array(), im = json::array();
    for (int i = 0; i < n; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int k = 0; k < n; ++k) {
            rrow.push_back(a(i, k).real());
            irow.push_back(a(i, k).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    json j;
    j["dim"] = n;
    j["re"] = re;
    j["im"] = im;
    return j.dump(2);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot open output file: " + tmp);
        out << content;
        if (!out) throw DomainError("failed writing output file: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw DomainError("failed to move output into place: " + path + " (" + ec.message() + ")");
    }
}

} // namespace nr
