#include "spinsense/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace spinsense {

std::string axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::Beta: return "beta";
        case SweepAxis::CollectiveCoupling: return "coupling";
        case SweepAxis::ClusterSize: return "cluster_size";
        case SweepAxis::Time: return "time";
    }
    return "unknown";
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "beta") return SweepAxis::Beta;
    if (name == "coupling") return SweepAxis::CollectiveCoupling;
    if (name == "cluster_size") return SweepAxis::ClusterSize;
    if (name == "time") return SweepAxis::Time;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

void SweepGrid::validate() const {
    if (points < 2) throw std::invalid_argument("sweep grid: points must be >= 2");
    if (!(min < max)) throw std::invalid_argument("sweep grid: min must be < max");
    if (spacing == GridSpacing::Log && !(min > 0.0)) {
        throw std::invalid_argument("sweep grid: log spacing requires min > 0");
    }
}

std::vector<double> SweepGrid::values() const {
    validate();
    std::vector<double> out(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double s = static_cast<double>(i) / n;
        if (spacing == GridSpacing::Linear) {
            out[i] = min + (max - min) * s;
        } else {
            out[i] = std::pow(10.0, std::log10(min) + (std::log10(max) - std::log10(min)) * s);
        }
    }
    return out;
}

namespace {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// The run with the swept value substituted on the chosen axis.
SensingRun materialize(const SweepConfig& config, double value) {
    SensingRun run = config.base;
    switch (config.axis) {
        case SweepAxis::Beta:
            run.bath.beta = value;
            break;
        case SweepAxis::CollectiveCoupling: {
            if (run.geom.alpha != 0.0) {
                throw std::invalid_argument(
                    "coupling sweep: requires alpha = 0 so the collective coupling is (n-1) J");
            }
            const double n = static_cast<double>(run.geom.size);
            if (run.geom.size < 2) throw std::invalid_argument("coupling sweep: requires n >= 2");
            run.geom.base_coupling = value / (n - 1.0);
            break;
        }
        case SweepAxis::ClusterSize: {
            const auto n = static_cast<std::size_t>(std::llround(value));
            if (n < 1) throw std::invalid_argument("cluster-size sweep: n must be >= 1");
            run.geom.size = n;
            run.probe = ProbeSpec(n, 1, run.probe.omega0, run.probe.delta_omega);
            break;
        }
        case SweepAxis::Time:
            run.time = value;
            break;
    }
    return run;
}

SweepRow evaluate_point(const SweepConfig& config, double value) {
    const SensingRun run = materialize(config, value);
    const auto bundle = average_rate(run.geom, run.probe.omega(), run.bath);

    SweepRow row;
    row.swept = value;
    row.regime = bundle.mixed_regime ? "mixed" : regime_name(bundle.regime);
    row.gamma = bundle.average;
    double mean_j = 0.0;
    for (const auto& s : bundle.spins) mean_j += s.collective;
    row.j_collective = mean_j / static_cast<double>(bundle.spins.size());

    const auto opt = optimize(run);
    row.kind = opt.kind;
    row.s_max = opt.s_max;
    row.t_opt = opt.t_opt;

    if (bundle.regime == Regime::StrongFerromagnetic && !bundle.mixed_regime) {
        SensingRun probe_run = run;
        row.high_beta = high_beta_approx(probe_run).s_max;
    }

    if (config.axis == SweepAxis::Time) {
        if (value <= 0.0) {
            row.s_at_t = 0.0;
        } else if (std::isinf(bundle.average)) {
            row.s_at_t = 0.0;
        } else {
            row.s_at_t = sensitivity(run).sensitivity;
        }
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    const auto values = config.grid.values();
    std::vector<SweepRow> rows(values.size());
    parallel_for(values.size(), [&](std::size_t i) { rows[i] = evaluate_point(config, values[i]); });
    return rows;
}

Table sweep_table(const SweepConfig& config, const std::vector<SweepRow>& rows) {
    Table table;
    table.header = {"swept_value", "regime", "Gamma", "S_max", "t_opt",
                    "S_max_high_beta_approx", "J_collective"};
    const bool with_time = config.axis == SweepAxis::Time;
    if (with_time) table.header.push_back("S");

    for (const auto& row : rows) {
        std::vector<Cell> cells;
        cells.push_back(Cell::number(row.swept));
        cells.push_back(Cell::text(row.regime));
        cells.push_back(Cell::number(row.gamma));
        switch (row.kind) {
            case SensitivityKind::Finite:
                cells.push_back(Cell::number(row.s_max));
                cells.push_back(Cell::number(row.t_opt));
                break;
            case SensitivityKind::Unbounded:
                cells.push_back(Cell::text("inf"));
                cells.push_back(Cell::text("inf"));
                break;
            case SensitivityKind::DivergedRate:
                cells.push_back(Cell::text("0"));
                cells.push_back(Cell::text("0"));
                break;
        }
        cells.push_back(row.high_beta ? Cell::number(*row.high_beta) : Cell::text("nan"));
        cells.push_back(Cell::number(row.j_collective));
        if (with_time) cells.push_back(Cell::number(row.s_at_t.value_or(0.0)));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

FigurePreset parse_figure_preset(const std::string& name) {
    if (name == "fig1e") return FigurePreset::Fig1e;
    if (name == "fig2a") return FigurePreset::Fig2a;
    if (name == "fig2b") return FigurePreset::Fig2b;
    if (name == "fig2c") return FigurePreset::Fig2c;
    if (name == "fig2d") return FigurePreset::Fig2d;
    if (name == "fig2e") return FigurePreset::Fig2e;
    if (name == "fig2f") return FigurePreset::Fig2f;
    if (name == "fig3a") return FigurePreset::Fig3a;
    if (name == "fig3b") return FigurePreset::Fig3b;
    if (name == "fig3c") return FigurePreset::Fig3c;
    throw std::invalid_argument("unknown figure preset: " + name);
}

std::string figure_preset_name(FigurePreset p) {
    switch (p) {
        case FigurePreset::Fig1e: return "fig1e";
        case FigurePreset::Fig2a: return "fig2a";
        case FigurePreset::Fig2b: return "fig2b";
        case FigurePreset::Fig2c: return "fig2c";
        case FigurePreset::Fig2d: return "fig2d";
        case FigurePreset::Fig2e: return "fig2e";
        case FigurePreset::Fig2f: return "fig2f";
        case FigurePreset::Fig3a: return "fig3a";
        case FigurePreset::Fig3b: return "fig3b";
        case FigurePreset::Fig3c: return "fig3c";
    }
    return "unknown";
}

namespace {

constexpr double bath_amplitude = 1e-3;

SpectralDensity ohmic() { return SpectralDensity::ohmic_density(bath_amplitude); }
SpectralDensity white() { return SpectralDensity::white_noise(bath_amplitude); }
SpectralDensity one_f() { return SpectralDensity::one_over_f(bath_amplitude); }

SensingRun pair_run(double coupling, double beta, SpectralDensity sd) {
    return SensingRun(ProbeSpec(2, 1, 1.0), ClusterGeometry(2, 0.0, coupling),
                      BathContext::natural(beta, sd));
}

SweepConfig beta_sweep(double coupling, SpectralDensity sd) {
    SweepConfig c;
    c.axis = SweepAxis::Beta;
    c.grid = {0.1, 100.0, 61, GridSpacing::Log};
    c.base = pair_run(coupling, 1.0, sd);
    return c;
}

std::vector<FigureCurve> beta_figure(SpectralDensity sd) {
    return {{"weak", beta_sweep(0.0, sd)},
            {"strong_fm", beta_sweep(5.0, sd)},
            {"strong_af", beta_sweep(-5.0, sd)}};
}

SweepConfig coupling_sweep(double beta, SpectralDensity sd) {
    SweepConfig c;
    c.axis = SweepAxis::CollectiveCoupling;
    c.grid = {0.1, 10.0, 41, GridSpacing::Log};  // the middle point lands on J = w
    c.base = pair_run(0.0, beta, sd);
    return c;
}

std::vector<FigureCurve> coupling_figure(SpectralDensity sd) {
    return {{"beta_1", coupling_sweep(1.0, sd)},
            {"beta_3", coupling_sweep(3.0, sd)},
            {"beta_10", coupling_sweep(10.0, sd)}};
}

SweepConfig cluster_sweep(double alpha, SpectralDensity sd) {
    SweepConfig c;
    c.axis = SweepAxis::ClusterSize;
    c.grid = {2.0, 20.0, 19, GridSpacing::Linear};
    // The ring convention keeps the collective coupling uniform across spins.
    c.base = SensingRun(ProbeSpec(2, 1, 1.0),
                        ClusterGeometry(2, alpha, 1.0, DistanceConvention::Circular),
                        BathContext::natural(10.0, sd));
    return c;
}

std::vector<FigureCurve> cluster_figure(SpectralDensity sd) {
    const double inf_alpha = std::numeric_limits<double>::infinity();
    return {{"alpha_0", cluster_sweep(0.0, sd)},
            {"alpha_2", cluster_sweep(2.0, sd)},
            {"alpha_3", cluster_sweep(3.0, sd)},
            {"alpha_inf", cluster_sweep(inf_alpha, sd)}};
}

}  // namespace

std::vector<FigureCurve> figure_curves(FigurePreset preset) {
    switch (preset) {
        case FigurePreset::Fig1e: {
            SweepConfig weak;
            weak.axis = SweepAxis::Time;
            weak.grid = {0.0, 3000.0, 301, GridSpacing::Linear};
            weak.base = pair_run(0.0, 1.0, ohmic());
            SweepConfig strong = weak;
            strong.base = pair_run(5.0, 1.0, ohmic());
            return {{"weak", weak}, {"strong_fm", strong}};
        }
        case FigurePreset::Fig2a: return beta_figure(ohmic());
        case FigurePreset::Fig2b: return beta_figure(white());
        case FigurePreset::Fig2c: return beta_figure(one_f());
        case FigurePreset::Fig2d: return coupling_figure(ohmic());
        case FigurePreset::Fig2e: return coupling_figure(white());
        case FigurePreset::Fig2f: return coupling_figure(one_f());
        case FigurePreset::Fig3a: return cluster_figure(ohmic());
        case FigurePreset::Fig3b: return cluster_figure(ohmic());
        case FigurePreset::Fig3c: return cluster_figure(white());
    }
    throw std::invalid_argument("unknown figure preset");
}

}  // namespace spinsense
