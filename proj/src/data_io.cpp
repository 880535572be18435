#include "camsim/data_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "camsim/errors.hpp"

namespace camsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t start = s.find_first_not_of(" \t\r");
    if (start == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(start, end - start + 1);
}

double parse_real(const std::string& token, const std::string& where) {
    const char* begin = token.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw Error(ErrorCode::FormatError, where + ": expected a real value, got \"" + token + "\"");
    return v;
}

Cell parse_cell_token(const std::string& token, const std::string& where) {
    if (token == "*") return Cell::wildcard();
    std::size_t colon = token.find(':');
    if (colon != std::string::npos) {
        double lo = parse_real(trim(token.substr(0, colon)), where);
        double hi = parse_real(trim(token.substr(colon + 1)), where);
        if (lo > hi)
            throw Error(ErrorCode::FormatError, where + ": range lo " + std::to_string(lo) +
                                                    " exceeds hi " + std::to_string(hi));
        return Cell::range(lo, hi);
    }
    return Cell::numeric(parse_real(token, where));
}

}  // namespace

CellMatrix parse_data_csv(const std::string& text, const std::string& origin) {
    CellMatrix rows;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        CellRow row;
        std::istringstream ls(stripped);
        std::string token;
        std::string where = origin + ":" + std::to_string(line_no);
        while (std::getline(ls, token, ',')) {
            std::string t = trim(token);
            if (t.empty())
                throw Error(ErrorCode::FormatError, where + ": empty field");
            row.push_back(parse_cell_token(t, where));
        }
        if (row.empty()) continue;
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw Error(ErrorCode::FormatError,
                        where + ": expected " + std::to_string(width) + " fields, got " +
                            std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::EmptyData, origin + ": no data rows");
    return rows;
}

CellMatrix load_data_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open data file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_data_csv(ss.str(), path);
}

std::vector<int> load_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open label file: " + path);
    std::vector<int> labels;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        try {
            std::size_t pos = 0;
            int v = std::stoi(stripped, &pos);
            if (pos != stripped.size()) throw std::invalid_argument(stripped);
            labels.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::FormatError, path + ":" + std::to_string(line_no) +
                                                    ": expected an integer label, got \"" +
                                                    stripped + "\"");
        }
    }
    if (labels.empty()) throw Error(ErrorCode::EmptyData, path + ": no labels");
    return labels;
}

RealMatrix to_reals(const CellMatrix& cells) {
    RealMatrix out;
    out.reserve(cells.size());
    for (const auto& row : cells) {
        std::vector<double> values;
        values.reserve(row.size());
        for (const Cell& c : row) {
            if (c.kind != Cell::Kind::Numeric)
                throw Error(ErrorCode::BadValue, "matrix contains non-numeric cells");
            values.push_back(c.value);
        }
        out.push_back(std::move(values));
    }
    return out;
}

}  // namespace camsim
