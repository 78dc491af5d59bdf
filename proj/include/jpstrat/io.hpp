#ifndef JPSTRAT_IO_HPP
#define JPSTRAT_IO_HPP

#include <jpstrat/design.hpp>
#include <jpstrat/version.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace jps {

// Shortest decimal representation that round-trips to the same double.
inline std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt_fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
}

// First line of every emitted file: version, seed and the semantic command.
// Execution-only flags (--threads, --out) are excluded so identical analyses
// produce identical bytes.
inline std::string metadata_line(std::uint64_t seed, const std::string& command) {
    return "# jpstrat " + std::string(kVersion) + " seed=" + std::to_string(seed) +
           " command=" + command;
}

struct SampleFile {
    std::string design = "jps";  // srs | jps | brss
    int H = 1;
    std::uint64_t seed = 0;
    // samples grouped by replicate index
    std::vector<JpsSample> replicates;
};

inline void write_sample_csv(std::ostream& os, const SampleFile& sf, const std::string& command) {
    os << metadata_line(sf.seed, command) << " design=" << sf.design << " h=" << sf.H << "\n";
    os << "replicate,x,rank\n";
    for (std::size_t rep = 0; rep < sf.replicates.size(); ++rep) {
        for (const auto& p : sf.replicates[rep].pairs) {
            os << rep << "," << fmt_double(p.x) << ",";
            if (sf.design != "srs") os << p.rank;
            os << "\n";
        }
    }
}

inline SampleFile read_sample_csv(std::istream& is) {
    SampleFile sf;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("sample file: empty");
    if (line.rfind("# ", 0) == 0) {
        // pull design= and h= tokens out of the metadata line
        std::istringstream meta(line.substr(2));
        std::string tok;
        while (meta >> tok) {
            if (tok.rfind("h=", 0) == 0) sf.H = std::stoi(tok.substr(2));
            if (tok.rfind("design=", 0) == 0) sf.design = tok.substr(7);
            if (tok.rfind("seed=", 0) == 0) sf.seed = std::stoull(tok.substr(5));
        }
        if (!std::getline(is, line)) throw std::runtime_error("sample file: missing header");
    }
    if (line != "replicate,x,rank") throw std::runtime_error("sample file: unexpected header: " + line);
    std::map<long, JpsSample> reps;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("sample file: malformed row: " + line);
        long rep = std::stol(line.substr(0, c1));
        double x = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        std::string rank_s = line.substr(c2 + 1);
        int rank = rank_s.empty() ? 1 : std::stoi(rank_s);
        auto& s = reps[rep];
        s.H = sf.H;
        s.pairs.push_back({x, rank});
    }
    for (auto& [idx, s] : reps) sf.replicates.push_back(std::move(s));
    return sf;
}

// Writes to the path, or to stdout when path is "-" or empty.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

}  // namespace jps

#endif  // JPSTRAT_IO_HPP
