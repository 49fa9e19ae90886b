// faraday: command-line front end for the spin-cavity magnetometry model.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "faraday/faraday.hpp"

namespace fs = std::filesystem;
using namespace faraday;

namespace {

struct Common {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    unsigned jobs = default_jobs();
};

void add_common(CLI::App* cmd, Common& c, bool with_jobs = false) {
    cmd->add_option("--config", c.config_path, "parameter file (key = value [unit])");
    cmd->add_option("--set", c.sets, "override, key=value [unit]; repeatable");
    cmd->add_option("--out", c.out_dir, "write CSV files into this directory instead of stdout");
    if (with_jobs) cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

ResolvedConfig load(const Common& c) {
    std::string text;
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) throw ConfigError("cannot read config file '" + c.config_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return parse_config(text, c.sets);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

void emit(const Common& c, const std::string& name, const std::string& content) {
    if (c.out_dir.empty()) {
        std::cout << content;
        return;
    }
    fs::create_directories(c.out_dir);
    write_file(fs::path(c.out_dir) / name, content);
    std::cerr << "wrote " << (fs::path(c.out_dir) / name).string() << '\n';
}

/// Two-column name,value table for single-point commands.
struct KeyValues {
    Table t{{"quantity", "value"}, {}};
    void add(const std::string& k, double v) { t.rows.push_back({k, format_cell(v)}); }
};

void emit_values(const Common& c, const std::string& cmd, const ResolvedConfig& cfg, const KeyValues& kv) {
    emit(c, cmd + ".csv", to_csv(make_manifest(cmd, &cfg), kv.t));
}

void cmd_reflect(const Common& c) {
    const auto cfg = load(c);
    const auto pr = polarized_reflection(cfg.params);
    KeyValues kv;
    kv.add("re r_plus", pr.r_plus.real());
    kv.add("im r_plus", pr.r_plus.imag());
    kv.add("re r_minus", pr.r_minus.real());
    kv.add("im r_minus", pr.r_minus.imag());
    kv.add("re r_HH", pr.r_HH.real());
    kv.add("im r_HH", pr.r_HH.imag());
    kv.add("re r_VH", pr.r_VH.real());
    kv.add("im r_VH", pr.r_VH.imag());
    kv.add("r_bar", pr.r_bar);
    kv.add("delta_r", pr.delta_r);
    kv.add("phi_F", pr.phi_F);
    kv.add("singular", pr.singular ? 1.0 : 0.0);
    emit_values(c, "reflect", cfg, kv);
}

void cmd_probs(const Common& c) {
    const auto cfg = load(c);
    const auto j = outcome_jet(cfg.params);
    KeyValues kv;
    kv.add("P_V", j.P.P_V);
    kv.add("P_H", j.P.P_H);
    kv.add("P_empty", j.P.P_empty);
    kv.add("dP_V/d delta (1/Hz)", j.dP[0]);
    kv.add("dP_H/d delta (1/Hz)", j.dP[1]);
    kv.add("dP_empty/d delta (1/Hz)", j.dP[2]);
    emit_values(c, "probs", cfg, kv);
}

void cmd_fisher_sp(const Common& c) {
    const auto cfg = load(c);
    const auto f = fisher_information_sp(cfg.params);
    const auto fv = nominal_fisher_v(cfg.params);
    KeyValues kv;
    kv.add("F_I (1/T^2)", f.si);
    kv.add("F_I ((mu_B g_e/kappa_i)^2)", f.scaled);
    kv.add("F_IV (1/T^2)", fv.si);
    kv.add("F_IV ((mu_B g_e/kappa_i)^2)", fv.scaled);
    emit_values(c, "fisher-sp", cfg, kv);
}

void cmd_sense_sp(const Common& c) {
    const auto cfg = load(c);
    const auto r = sensitivity_sp(cfg.params);
    KeyValues kv;
    kv.add("sensitivity (T/sqrt(Hz))", r.value);
    kv.add("sensitivity (sqrt(kappa_i)/(mu_B g_e))", r.value_scaled);
    kv.add("F_I peak (1/T^2)", r.fisher_peak.si);
    kv.add("F_I peak ((mu_B g_e/kappa_i)^2)", r.fisher_peak.scaled);
    kv.add("peak delta (Hz)", r.peak_location);
    kv.add("FWHM (Hz)", r.fwhm);
    kv.add("tau_m (s)", r.tau_m);
    emit_values(c, "sense-sp", cfg, kv);
}

void cmd_fisher_mp(const Common& c) {
    const auto cfg = load(c);
    const auto fv = nominal_fisher_v(cfg.params);
    const auto nb = noise_budget(cfg.params, cfg.environment());
    const auto m = measurement_moments(cfg.params, cfg.environment(), cfg.probe());
    KeyValues kv;
    kv.add("F_IV (1/T^2)", fv.si);
    kv.add("F_IV ((mu_B g_e/kappa_i)^2)", fv.scaled);
    kv.add("n_th", cfg.environment().n_th);
    kv.add("n_in", cfg.probe().n_in);
    kv.add("n_xi (Hz)", nb.n_xi);
    kv.add("C_th", nb.C_th);
    kv.add("mean count", m.mean);
    kv.add("variance", m.variance);
    kv.add("variance (approx)", m.variance_approx);
    emit_values(c, "fisher-mp", cfg, kv);
}

void cmd_sense_mp(const Common& c, bool at_peak) {
    const auto cfg = load(c);
    const auto r = at_peak ? sensitivity_mp_at_peak(cfg.params, cfg.environment(), cfg.probe())
                           : sensitivity_mp(cfg.params, cfg.environment(), cfg.probe());
    KeyValues kv;
    kv.add("delta (Hz)", r.parameter_echo.delta);
    kv.add("sensitivity (T/sqrt(Hz))", r.value);
    kv.add("sensitivity pre-limit (T/sqrt(Hz))", r.value_pre_limit);
    kv.add("sensitivity kT form (T/sqrt(Hz))", r.value_kT);
    kv.add("sensitivity overcoupled form (T/sqrt(Hz))", r.value_overcoupled);
    kv.add("sensitivity (sqrt(kappa_i)/(mu_B g_e))", r.value_scaled);
    kv.add("F_IV (1/T^2)", r.fisher_v.si);
    kv.add("C_th", r.noise.C_th);
    kv.add("n_th", r.env.n_th);
    emit_values(c, "sense-mp", cfg, kv);
}

void cmd_sweep(const Common& c, const std::vector<std::string>& axes, const std::string& quantity, bool strict) {
    SweepSpec s;
    s.base = load(c);
    for (const auto& a : axes) s.axes.push_back(parse_axis(a));
    s.quantity = parse_quantity(quantity);
    s.allow_nonfinite = !strict;
    auto m = make_manifest("sweep", &s.base);
    for (const auto& a : s.axes) {
        m.add("axis." + a.name, format_number(a.lo) + ".." + format_number(a.hi) + " x " +
                                    std::to_string(a.points) + (a.log ? " log" : " lin") +
                                    (a.unit.empty() ? "" : " " + a.unit));
    }
    m.add("quantity", quantity);
    emit(c, "sweep.csv", to_csv(m, run_sweep(s, c.jobs).table()));
}

void cmd_figure(const Common& c, int id) {
    for (const auto& f : figure_job(id, c.jobs)) emit(c, f.name, f.content);
}

int cmd_check_paper(const Common& c, const std::vector<int>& ids) {
    const auto r = check_paper(c.jobs, ids);
    emit(c, "check_paper.csv", to_csv(r.manifest, r.claims));
    if (!r.discrepancies.columns.empty()) {
        auto m = make_manifest("check-paper discrepancy report", nullptr);
        emit(c, "discrepancy.csv", to_csv(m, r.discrepancies));
    }
    std::size_t failed = 0;
    for (const auto& row : r.manifest.claims) failed += row.pass ? 0 : 1;
    std::cerr << (r.manifest.claims.size() - failed) << "/" << r.manifest.claims.size() << " claims pass\n";
    return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin-cavity Faraday magnetometry model"};
    app.set_version_flag("--version", std::string("faraday ") + kVersion);
    app.require_subcommand(1);

    Common common;
    auto* reflect = app.add_subcommand("reflect", "reflection amplitudes and Faraday angle");
    auto* probs = app.add_subcommand("probs", "single-photon outcome probabilities and derivatives");
    auto* fisher_sp = app.add_subcommand("fisher-sp", "single-photon Fisher information at the configured point");
    auto* sense_sp = app.add_subcommand("sense-sp", "single-photon sensitivity limit");
    auto* fisher_mp = app.add_subcommand("fisher-mp", "V-port Fisher information and thermal noise budget");
    auto* sense_mp = app.add_subcommand("sense-mp", "multiphoton sensitivity limit");
    auto* sweep = app.add_subcommand("sweep", "one- or two-axis parameter sweep");
    auto* figure = app.add_subcommand("figure", "figure reproduction job (3..7)");
    auto* check = app.add_subcommand("check-paper", "run the acceptance suite");

    for (auto* cmd : {reflect, probs, fisher_sp, sense_sp, fisher_mp, sense_mp}) add_common(cmd, common);
    add_common(sweep, common, true);
    add_common(figure, common, true);
    check->add_option("--out", common.out_dir, "write CSV files into this directory instead of stdout");
    check->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);

    bool at_peak = false;
    sense_mp->add_flag("--at-peak", at_peak, "move delta to the peak of the V-port Fisher curve first");

    std::vector<std::string> axes;
    std::string quantity;
    bool strict = false;
    sweep->add_option("--axis", axes, "NAME:LO:HI:N[:lin|log][:kappa_i]; one or two")->required()->expected(1, 2);
    sweep->add_option("--quantity", quantity, "P_V, P_H, P_empty, F_I, F_IV, phi_F, sens_sp, sens_mp")->required();
    sweep->add_flag("--strict", strict, "fail instead of flagging non-finite cells");

    int figure_id = 0;
    figure->add_option("id", figure_id, "figure number")->required()->check(CLI::Range(3, 7));

    std::vector<int> criterion_ids;
    check->add_option("--criterion", criterion_ids, "run only these criteria (repeatable)")->check(CLI::Range(1, 11));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*reflect) cmd_reflect(common);
        else if (*probs) cmd_probs(common);
        else if (*fisher_sp) cmd_fisher_sp(common);
        else if (*sense_sp) cmd_sense_sp(common);
        else if (*fisher_mp) cmd_fisher_mp(common);
        else if (*sense_mp) cmd_sense_mp(common, at_peak);
        else if (*sweep) cmd_sweep(common, axes, quantity, strict);
        else if (*figure) cmd_figure(common, figure_id);
        else if (*check) return cmd_check_paper(common, criterion_ids);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
