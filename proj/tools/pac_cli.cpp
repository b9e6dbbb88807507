#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <pac/pac.hpp>

using nlohmann::json;

namespace {

std::string read_or_stdout(const std::string& out, const std::string& payload) {
    if (out.empty() || out == "-") {
        std::cout << payload;
        return "stdout";
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open " + out);
    f << payload;
    return out;
}

json profile_json(const pac::RateProfile& p) {
    return json{{"n", p.N()}, {"k", p.K()}, {"positions", p.positions()}};
}

json tree_json(const pac::NodeCutoffTree& t) {
    json levels = json::array();
    for (int s = 0; s <= t.levels; ++s) {
        json nodes = json::array();
        for (std::size_t k = 0; k < t.nodes[static_cast<std::size_t>(s)].size(); ++k) {
            const auto& nd = t.node(s, k);
            nodes.push_back({{"z", nd.z},
                             {"r0", nd.r0},
                             {"cap", nd.cap},
                             {"z_stderr", nd.z_stderr},
                             {"span_begin", k * t.node_len(s) + 1},
                             {"span_len", t.node_len(s)}});
        }
        levels.push_back({{"level", s}, {"node_len", t.node_len(s)}, {"nodes", nodes}});
    }
    return json{{"n", t.N}, {"levels", t.levels}, {"epsilon", t.epsilon}, {"tree", levels}};
}

struct ProfileArgs {
    std::size_t n = 0, k = 0;
    std::string recipe = "rm";
    std::string profile_path;
    double design_snr = 2.0; // Eb/N0 dB at the profile's own rate
    int level = 3;
    double epsilon = 0.1;
    std::uint64_t mc_samples = 1000000;
    std::uint64_t seed = 1;
};

pac::RateProfile make_profile(const ProfileArgs& a, json* meta) {
    using namespace pac;
    if (!a.profile_path.empty()) {
        auto p = load_profile(a.profile_path);
        if (meta) *meta = {{"source", "file"}, {"path", a.profile_path}};
        return p;
    }
    if (a.recipe == "rm") {
        auto p = rm_profile(a.n, a.k);
        if (meta) *meta = {{"source", "recipe"}, {"recipe", "rm"}};
        return p;
    }
    if (a.recipe == "polar") {
        double esn0 = ebn0_to_esn0(a.design_snr, static_cast<double>(a.k) / a.n);
        auto p = polar_profile(ChannelModel::biawgn(esn0), a.n, a.k, a.mc_samples, a.seed);
        if (meta)
            *meta = {{"source", "recipe"}, {"recipe", "polar"}, {"design_ebn0_db", a.design_snr},
                     {"design_esn0", esn0},  {"mc_samples", a.mc_samples}, {"seed", a.seed}};
        return p;
    }
    if (a.recipe == "tamed-rm") {
        double esn0 = ebn0_to_esn0(a.design_snr, static_cast<double>(a.k) / a.n);
        auto tree = node_cutoff_tree(ChannelModel::biawgn(esn0), a.n, a.level, a.epsilon,
                                     a.mc_samples, a.seed);
        auto p = tame_profile(rm_profile(a.n, a.k), tree, a.level);
        if (meta)
            *meta = {{"source", "recipe"},         {"recipe", "tamed-rm"},
                     {"rm_k", a.k},                {"design_ebn0_db", a.design_snr},
                     {"design_esn0", esn0},        {"level", a.level},
                     {"epsilon", a.epsilon},       {"mc_samples", a.mc_samples},
                     {"seed", a.seed},             {"achieved_k", p.K()}};
        return p;
    }
    if (a.recipe == "merged") {
        auto recipe = standard_merge_recipe(a.n, a.k);
        auto built = build_merged(recipe, a.epsilon, a.mc_samples, a.seed);
        if (meta)
            *meta = {{"source", "recipe"},
                     {"recipe", "merged"},
                     {"base_rm_k", recipe.base_rm_K},
                     {"base_design_ebn0_db", recipe.base_design_db},
                     {"base_k", built.base.K()},
                     {"donor_rm_k", recipe.donor_rm_K},
                     {"donor_design_ebn0_db", recipe.donor_design_db},
                     {"donor_k", built.donor.K()},
                     {"level", recipe.level},
                     {"weight", recipe.weight},
                     {"epsilon", a.epsilon},
                     {"mc_samples", a.mc_samples},
                     {"seed", a.seed},
                     {"added_positions", built.added}};
        return built.profile;
    }
    throw CLI::ValidationError("--recipe", "unknown recipe " + a.recipe);
}

void add_profile_opts(CLI::App* cmd, ProfileArgs& a, bool need_nk) {
    auto* n = cmd->add_option("--n", a.n, "code length (power of two)");
    auto* k = cmd->add_option("--k", a.k, "data length (RM start K for tamed-rm)");
    if (need_nk) {
        n->required();
        k->required();
    }
    cmd->add_option("--recipe", a.recipe, "rm | polar | tamed-rm | merged")
        ->check(CLI::IsMember({"rm", "polar", "tamed-rm", "merged"}));
    cmd->add_option("--design-snr", a.design_snr, "design Eb/N0 in dB (polar, tamed-rm)");
    cmd->add_option("--level", a.level, "polarization tree level for caps");
    cmd->add_option("--epsilon", a.epsilon, "cap slack");
    cmd->add_option("--mc-samples", a.mc_samples, "density-evolution sample count");
    cmd->add_option("--seed", a.seed, "construction seed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PAC code construction, simulation and bounds"};
    app.require_subcommand(1);

    // ---- construct ----
    ProfileArgs cons;
    std::string cons_out, cons_format = "profile";
    auto* construct = app.add_subcommand("construct", "build a rate profile and write it out");
    add_profile_opts(construct, cons, true);
    construct->add_option("--out", cons_out, "output path (default stdout)");
    construct->add_option("--format", cons_format, "profile | json")
        ->check(CLI::IsMember({"profile", "json"}));

    // ---- simulate ----
    ProfileArgs sim_prof;
    pac::ExperimentConfig sim;
    std::vector<double> grid;
    std::string sim_out, sim_format = "csv";
    std::uint64_t sim_max_visits = 0;
    bool sim_noiseless = false;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo FER/ANV sweep");
    add_profile_opts(simulate, sim_prof, false);
    simulate->add_option("--profile", sim_prof.profile_path, "read profile from file");
    simulate->add_option("--g", sim.g, "convolution polynomial, octal");
    simulate->add_option("--ebn0", grid, "Eb/N0 grid in dB")->delimiter(',');
    simulate->add_option("--min-frames", sim.min_frames, "minimum frames per point");
    simulate->add_option("--min-errors", sim.min_errors, "frame errors to collect per point");
    simulate->add_option("--max-frames", sim.max_frames, "frame cap per point");
    simulate->add_option("--delta", sim.delta, "threshold spacing");
    simulate->add_option("--max-visits", sim_max_visits, "visit budget (0 = unlimited)");
    simulate->add_option("--sim-seed", sim.seed, "simulation seed");
    simulate->add_option("--bias-mc-samples", sim.bias_mc_samples, "bias estimation samples");
    simulate->add_option("--workers", sim.workers, "worker threads");
    simulate->add_flag("--noiseless", sim_noiseless, "saturated-LLR override");
    simulate->add_option("--out", sim_out, "output path (default stdout)");
    simulate->add_option("--format", sim_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- bounds ----
    std::size_t b_n = 0, b_k = 0;
    std::vector<double> b_grid;
    std::string b_out, b_format = "csv";
    auto* bounds = app.add_subcommand("bounds", "dispersion approximation and cutoff-rate curves");
    bounds->add_option("--n", b_n, "code length")->required();
    bounds->add_option("--k", b_k, "data length")->required();
    bounds->add_option("--ebn0", b_grid, "Eb/N0 grid in dB")->required()->delimiter(',');
    bounds->add_option("--out", b_out, "output path (default stdout)");
    bounds->add_option("--format", b_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    // ---- tree ----
    ProfileArgs tr;
    std::string tr_out;
    double tr_rate = 0.0;
    auto* treecmd = app.add_subcommand("tree", "dump the node cutoff-rate tree");
    treecmd->add_option("--n", tr.n, "code length")->required();
    treecmd->add_option("--level", tr.level, "tree depth")->required();
    treecmd->add_option("--design-snr", tr.design_snr, "Eb/N0 in dB")->required();
    treecmd->add_option("--rate", tr_rate, "rate for the Eb/N0 conversion (default: uses --k/--n)");
    treecmd->add_option("--k", tr.k, "data length used for the rate conversion");
    treecmd->add_option("--epsilon", tr.epsilon, "cap slack");
    treecmd->add_option("--mc-samples", tr.mc_samples, "sample count");
    treecmd->add_option("--seed", tr.seed, "seed");
    treecmd->add_option("--out", tr_out, "output path (default stdout)");
    std::string tr_format = "json";
    treecmd->add_option("--format", tr_format, "json")->check(CLI::IsMember({"json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*construct) {
            json meta;
            auto p = make_profile(cons, &meta);
            if (cons_format == "json") {
                json out = profile_json(p);
                out["meta"] = meta;
                read_or_stdout(cons_out, out.dump(2) + "\n");
            } else {
                std::ostringstream os;
                pac::save_profile(p, os);
                read_or_stdout(cons_out, os.str());
            }
        } else if (*simulate) {
            json meta;
            sim.profile = make_profile(sim_prof, &meta);
            sim.ebn0_grid = grid;
            sim.noiseless = sim_noiseless;
            if (sim_max_visits > 0) sim.max_visits = sim_max_visits;
            auto rows = pac::run_sweep(sim);
            if (sim_format == "json") {
                json jrows = json::array();
                for (const auto& r : rows)
                    jrows.push_back({{"ebn0_db", r.ebn0_db},
                                     {"frames", r.frames},
                                     {"frame_errors", r.frame_errors},
                                     {"fer", r.fer},
                                     {"anv", r.anv},
                                     {"budget_exceedances", r.budget_exceedances},
                                     {"dispersion_fer", r.dispersion_fer},
                                     {"wall_time_s", r.wall_time_s},
                                     {"truncated", r.truncated}});
                json out{{"config",
                          {{"profile", profile_json(sim.profile)},
                           {"profile_meta", meta},
                           {"g", sim.g},
                           {"min_frames", sim.min_frames},
                           {"min_errors", sim.min_errors},
                           {"max_frames", sim.max_frames},
                           {"delta", sim.delta},
                           {"max_visits", sim_max_visits},
                           {"seed", sim.seed},
                           {"bias_mc_samples", sim.bias_mc_samples},
                           {"workers", sim.workers},
                           {"noiseless", sim.noiseless},
                           {"fer_reference", "normal approximation with +0.5*log2(N)"}}},
                         {"rows", jrows}};
                read_or_stdout(sim_out, out.dump(2) + "\n");
            } else {
                read_or_stdout(sim_out, pac::to_csv(rows));
            }
        } else if (*bounds) {
            double rate = static_cast<double>(b_k) / static_cast<double>(b_n);
            if (b_format == "json") {
                json jrows = json::array();
                for (double db : b_grid) {
                    double esn0 = pac::ebn0_to_esn0(db, rate);
                    auto cc = pac::biawgn_constants(esn0);
                    jrows.push_back({{"ebn0_db", db},
                                     {"esn0", esn0},
                                     {"capacity", cc.capacity},
                                     {"dispersion", cc.dispersion},
                                     {"r0", cc.cutoff},
                                     {"dispersion_fer", pac::dispersion_fer(b_n, b_k, esn0)}});
                }
                json out{{"n", b_n},
                         {"k", b_k},
                         {"fer_reference", "normal approximation with +0.5*log2(N)"},
                         {"rows", jrows}};
                read_or_stdout(b_out, out.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "ebn0_db,esn0,capacity,dispersion,r0,dispersion_fer\n";
                char buf[192];
                for (double db : b_grid) {
                    double esn0 = pac::ebn0_to_esn0(db, rate);
                    auto cc = pac::biawgn_constants(esn0);
                    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", db,
                                  esn0, cc.capacity, cc.dispersion, cc.cutoff,
                                  pac::dispersion_fer(b_n, b_k, esn0));
                    os << buf;
                }
                read_or_stdout(b_out, os.str());
            }
        } else if (*treecmd) {
            double rate = tr_rate > 0 ? tr_rate
                                      : (tr.k ? static_cast<double>(tr.k) / tr.n : 1.0);
            double esn0 = pac::ebn0_to_esn0(tr.design_snr, rate);
            auto tree = pac::node_cutoff_tree(pac::ChannelModel::biawgn(esn0), tr.n, tr.level,
                                              tr.epsilon, tr.mc_samples, tr.seed);
            json out = tree_json(tree);
            out["design_ebn0_db"] = tr.design_snr;
            out["design_esn0"] = esn0;
            out["mc_samples"] = tr.mc_samples;
            out["seed"] = tr.seed;
            read_or_stdout(tr_out, out.dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
