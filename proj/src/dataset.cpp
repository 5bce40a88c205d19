#include "depthbandit/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "depthbandit/rng.hpp"

namespace depthbandit {

PointSet read_csv(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    std::vector<double> values;
    int d = -1;
    int n = 0;
    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_header && line_no == 1) continue;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        int cols = 0;
        while (std::getline(row, cell, ',')) {
            size_t consumed = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &consumed);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": cannot parse value '" + cell + "'");
            }
            while (consumed < cell.size() &&
                   (cell[consumed] == ' ' || cell[consumed] == '\t' || cell[consumed] == '\r'))
                ++consumed;
            if (consumed != cell.size())
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": trailing characters in value '" + cell + "'");
            if (!std::isfinite(v))
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": value is not finite");
            values.push_back(v);
            ++cols;
        }
        if (cols == 0)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty row");
        if (d < 0) d = cols;
        else if (cols != d)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(d) + " columns, found " + std::to_string(cols));
        ++n;
    }
    if (n == 0) throw std::runtime_error(path + ": no data rows");
    return PointSet(n, d, std::move(values));
}

void write_csv(const std::string& path, const PointSet& points) {
    std::FILE* out = std::fopen(path.c_str(), "w");
    if (out == nullptr) throw std::runtime_error("cannot write dataset file: " + path);
    for (int i = 0; i < points.n; ++i) {
        const double* row = points.row(i);
        for (int c = 0; c < points.d; ++c)
            std::fprintf(out, c == 0 ? "%.17g" : ",%.17g", row[c]);
        std::fputc('\n', out);
    }
    std::fclose(out);
}

PointSet generate_gaussian(int n, int d, uint64_t seed) {
    Rng rng = Rng::for_stream(seed, 0xda7a5e7ULL);
    std::vector<double> values(static_cast<size_t>(n) * d);
    for (double& v : values) v = rng.next_gaussian();
    return PointSet(n, d, std::move(values));
}

} // namespace depthbandit
