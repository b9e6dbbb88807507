#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "channel.hpp"
#include "code.hpp"
#include "construction.hpp"
#include "fano.hpp"

namespace pac {

struct ExperimentConfig {
    RateProfile profile;
    std::string g = "3211";
    std::vector<double> ebn0_grid;
    std::uint64_t min_frames = 1;
    std::uint64_t min_errors = 100;
    std::uint64_t max_frames = 1000000;
    double delta = 1.0;
    std::uint64_t max_visits = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t seed = 1;
    std::uint64_t bias_mc_samples = 100000;
    int workers = 1;
    bool noiseless = false; // infinite-SNR override: saturated LLRs, no noise
};

struct SweepRow {
    double ebn0_db = 0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    double fer = 0;
    double anv = 0;
    std::uint64_t budget_exceedances = 0;
    double dispersion_fer = 0;
    double wall_time_s = 0;
    bool truncated = false; // stopped by max_frames before min_errors
};

namespace detail {

struct Tally {
    std::uint64_t frames = 0, errors = 0, visits = 0, budget = 0;
    void operator+=(const Tally& o) {
        frames += o.frames;
        errors += o.errors;
        visits += o.visits;
        budget += o.budget;
    }
};

// One frame, pure function of (stream_seed, frame index): draw data, encode,
// transmit, decode, compare.
inline Tally run_frame(const CodeSpec& spec, const FanoConfig& fcfg, double esn0, bool noiseless,
                       std::uint64_t stream_seed, std::uint64_t frame) {
    constexpr std::uint64_t data_pos = std::uint64_t{1} << 32;
    BitWord d(spec.K());
    for (std::size_t k = 0; k < d.size(); ++k)
        d[k] = static_cast<std::uint8_t>(rng::bits(stream_seed, frame, data_pos + k) & 1);
    BitWord x = spec.encode(d);
    std::vector<double> llrs =
        noiseless ? transmit_noiseless(x) : transmit(x, esn0, stream_seed, frame);
    LlrLattice lat(llrs);
    DecodeResult res = fano_decode(lat, spec, fcfg);
    Tally t;
    t.frames = 1;
    t.visits = res.visits;
    bool exceeded = res.outcome == DecodeOutcome::VisitBudgetExceeded;
    if (exceeded) t.budget = 1;
    if (exceeded || spec.profile.extract_data(res.v_hat) != d) t.errors = 1;
    return t;
}

} // namespace detail

// Deterministic sweep: frames are pure functions of (seed, grid point, frame
// index), batches have fixed boundaries, and aggregation is integer
// summation, so any worker count yields identical rows.
inline std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
    if (cfg.ebn0_grid.empty() && !cfg.noiseless) throw std::invalid_argument("empty Eb/N0 grid");
    if (cfg.min_frames < 1) throw std::invalid_argument("min_frames must be >= 1");
    CodeSpec spec(cfg.profile, ConvPoly(cfg.g));
    double rate = static_cast<double>(spec.K()) / static_cast<double>(spec.N());
    std::vector<double> grid = cfg.ebn0_grid;
    if (cfg.noiseless && grid.empty()) grid.push_back(std::numeric_limits<double>::infinity());

    std::vector<SweepRow> rows;
    for (std::size_t pt = 0; pt < grid.size(); ++pt) {
        auto t0 = std::chrono::steady_clock::now();
        double esn0 = cfg.noiseless ? 0.0 : ebn0_to_esn0(grid[pt], rate);
        FanoConfig fcfg;
        fcfg.delta = cfg.delta;
        fcfg.max_visits = cfg.max_visits;
        if (cfg.noiseless)
            fcfg.bias.assign(spec.N(), 0.0);
        else
            fcfg.bias = bias_vector(ChannelModel::biawgn(esn0), spec.N(), cfg.bias_mc_samples,
                                    rng::key(cfg.seed, 0xb1a5, pt));
        std::uint64_t stream_seed = rng::key(cfg.seed, 0xf4a3e5, pt);

        detail::Tally total;
        constexpr std::uint64_t batch = 4096;
        std::uint64_t next_frame = 0;
        while (true) {
            std::uint64_t want = std::min<std::uint64_t>(batch, cfg.max_frames - next_frame);
            if (want == 0) break;
            int workers = std::max(1, cfg.workers);
            std::vector<detail::Tally> part(static_cast<std::size_t>(workers));
            auto work = [&](int w) {
                detail::Tally local;
                for (std::uint64_t f = next_frame + static_cast<std::uint64_t>(w);
                     f < next_frame + want; f += static_cast<std::uint64_t>(workers))
                    local += detail::run_frame(spec, fcfg, esn0, cfg.noiseless, stream_seed, f);
                part[static_cast<std::size_t>(w)] = local;
            };
            if (workers == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(static_cast<std::size_t>(workers));
                for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
                for (auto& th : pool) th.join();
            }
            for (const auto& p : part) total += p;
            next_frame += want;
            if (total.frames >= cfg.min_frames && total.errors >= cfg.min_errors) break;
            if (next_frame >= cfg.max_frames) break;
        }

        SweepRow row;
        row.ebn0_db = grid[pt];
        row.frames = total.frames;
        row.frame_errors = total.errors;
        row.fer = total.frames ? static_cast<double>(total.errors) / static_cast<double>(total.frames) : 0.0;
        row.anv = total.frames ? static_cast<double>(total.visits) /
                                     (static_cast<double>(total.frames) * static_cast<double>(spec.N()))
                               : 0.0;
        row.budget_exceedances = total.budget;
        row.dispersion_fer = cfg.noiseless ? 0.0 : dispersion_fer(spec.N(), spec.K(), esn0);
        row.truncated = total.errors < cfg.min_errors && total.frames >= cfg.max_frames;
        row.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(row);
    }
    return rows;
}

inline std::string csv_header() {
    return "ebn0_db,frames,frame_errors,fer,anv,budget_exceedances,dispersion_fer,wall_time_s";
}

inline std::string csv_row(const SweepRow& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.10g,%llu,%llu,%.10g,%.10g,%llu,%.10g,%.3f", r.ebn0_db,
                  static_cast<unsigned long long>(r.frames),
                  static_cast<unsigned long long>(r.frame_errors), r.fer, r.anv,
                  static_cast<unsigned long long>(r.budget_exceedances), r.dispersion_fer,
                  r.wall_time_s);
    return buf;
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << csv_header() << '\n';
    for (const auto& r : rows) os << csv_row(r) << '\n';
    return os.str();
}

} // namespace pac
