#ifndef JPSTRAT_DESIGN_HPP
#define JPSTRAT_DESIGN_HPP

#include <jpstrat/distributions.hpp>
#include <jpstrat/rng.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace jps {

// Judgment ranker: Perfect assigns the measured unit its true rank within the
// ranking class; Concomitant ranks on rho * normal-score + noise, reducing to
// Perfect at rho = 1 and to uninformative ranks at rho = 0.
struct Ranker {
    enum class Kind { Perfect, Concomitant };
    Kind kind = Kind::Perfect;
    double rho = 1.0;

    static Ranker perfect() { return {}; }
    static Ranker concomitant(double rho) {
        if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("ranker: rho must be in [0,1]");
        return {Kind::Concomitant, rho};
    }
    std::string name() const {
        if (kind == Kind::Perfect) return "perfect";
        std::string s = std::to_string(rho);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return "concomitant:" + s;
    }
};

inline Ranker parse_ranker(const std::string& spec) {
    if (spec == "perfect") return Ranker::perfect();
    if (spec.rfind("concomitant:", 0) == 0) return Ranker::concomitant(std::stod(spec.substr(12)));
    throw std::invalid_argument("unknown ranker: '" + spec + "'");
}

// One measured value with its judgment rank.
struct RankedPair {
    double x;
    int rank;  // 1..H
};

struct JpsSample {
    int H = 1;
    std::vector<RankedPair> pairs;

    std::vector<int> counts() const {
        std::vector<int> n_r(static_cast<std::size_t>(H), 0);
        for (const auto& p : pairs) ++n_r[static_cast<std::size_t>(p.rank - 1)];
        return n_r;
    }
    int occupied_strata() const {
        auto n_r = counts();
        int h = 0;
        for (int v : n_r) h += (v > 0);
        return h;
    }
    bool full_rank() const { return occupied_strata() == H; }
};

struct BrssSample {
    int H = 1;
    int cycles = 0;
    std::vector<double> values;  // row-major: cycles x H, column r-1 holds rank r

    double at(int cycle, int rank) const {
        return values[static_cast<std::size_t>(cycle) * static_cast<std::size_t>(H) +
                      static_cast<std::size_t>(rank - 1)];
    }
};

namespace detail {

// Rank of the measured unit inside its ranking class.  Ranking classes only
// ever see the uniform scores: comparing u's is the same as comparing x's
// because the quantile map is monotone, so auxiliary units are generated and
// discarded without pricing a quantile evaluation.
inline int judge_rank(CounterRng& rng, double u_measured, int H, const Ranker& ranker) {
    if (H == 1) return 1;
    if (ranker.kind == Ranker::Kind::Perfect) {
        int below = 0;
        for (int j = 1; j < H; ++j) below += (rng.u01() < u_measured);
        return 1 + below;
    }
    const double rho = ranker.rho;
    const double noise_sd = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    double z_measured = rho * normal_quantile(u_measured) + noise_sd * rng.normal();
    int below = 0;
    for (int j = 1; j < H; ++j) {
        double z_aux = rho * rng.normal() + noise_sd * rng.normal();
        below += (z_aux < z_measured);
    }
    return 1 + below;
}

}  // namespace detail

inline JpsSample draw_jps(CounterRng& rng, const Distribution& dist, int n, int H,
                          const Ranker& ranker = Ranker::perfect()) {
    if (n < 1) throw std::invalid_argument("draw_jps: n must be >= 1");
    if (H < 1) throw std::invalid_argument("draw_jps: H must be >= 1");
    JpsSample s;
    s.H = H;
    s.pairs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double u = rng.u01();
        int r = detail::judge_rank(rng, u, H, ranker);
        s.pairs.push_back({dist.quantile(u), r});
    }
    return s;
}

inline BrssSample draw_brss(CounterRng& rng, const Distribution& dist, int m, int H,
                            const Ranker& ranker = Ranker::perfect()) {
    if (m < 1) throw std::invalid_argument("draw_brss: m must be >= 1");
    if (H < 1) throw std::invalid_argument("draw_brss: H must be >= 1");
    BrssSample s;
    s.H = H;
    s.cycles = m;
    s.values.resize(static_cast<std::size_t>(m) * static_cast<std::size_t>(H));
    std::vector<double> u(static_cast<std::size_t>(H));
    std::vector<double> z(static_cast<std::size_t>(H));
    std::vector<int> idx(static_cast<std::size_t>(H));
    const bool perfect = ranker.kind == Ranker::Kind::Perfect;
    const double rho = ranker.rho;
    const double noise_sd = perfect ? 0.0 : std::sqrt(std::max(0.0, 1.0 - rho * rho));
    for (int c = 0; c < m; ++c) {
        for (int r = 1; r <= H; ++r) {
            // a fresh ranking class per measured unit; only the unit judged
            // to hold rank r is measured
            for (int k = 0; k < H; ++k) u[static_cast<std::size_t>(k)] = rng.u01();
            std::size_t pick;
            if (perfect) {
                for (int k = 0; k < H; ++k) idx[static_cast<std::size_t>(k)] = k;
                std::nth_element(idx.begin(), idx.begin() + (r - 1), idx.end(),
                                 [&](int a, int b) { return u[static_cast<std::size_t>(a)] < u[static_cast<std::size_t>(b)]; });
                pick = static_cast<std::size_t>(idx[static_cast<std::size_t>(r - 1)]);
            } else {
                for (int k = 0; k < H; ++k) {
                    z[static_cast<std::size_t>(k)] =
                        rho * normal_quantile(u[static_cast<std::size_t>(k)]) + noise_sd * rng.normal();
                }
                for (int k = 0; k < H; ++k) idx[static_cast<std::size_t>(k)] = k;
                std::nth_element(idx.begin(), idx.begin() + (r - 1), idx.end(),
                                 [&](int a, int b) { return z[static_cast<std::size_t>(a)] < z[static_cast<std::size_t>(b)]; });
                pick = static_cast<std::size_t>(idx[static_cast<std::size_t>(r - 1)]);
            }
            s.values[static_cast<std::size_t>(c) * static_cast<std::size_t>(H) +
                     static_cast<std::size_t>(r - 1)] = dist.quantile(u[pick]);
        }
    }
    return s;
}

inline std::vector<double> draw_srs(CounterRng& rng, const Distribution& dist, int n) {
    if (n < 1) throw std::invalid_argument("draw_srs: n must be >= 1");
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (auto& x : xs) x = dist.sample(rng);
    return xs;
}

}  // namespace jps

#endif  // JPSTRAT_DESIGN_HPP
