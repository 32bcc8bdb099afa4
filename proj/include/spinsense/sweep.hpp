// sweep.hpp — Parameter sweeps over beta, collective coupling, cluster size
// or sensing time, and the bundled figure presets. Grid points evaluate in a
// worker pool; rows are emitted in grid order regardless of completion order.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinsense/estimation.hpp"
#include "spinsense/tabular.hpp"

namespace spinsense {

enum class SweepAxis { Beta, CollectiveCoupling, ClusterSize, Time };
enum class GridSpacing { Linear, Log };
enum class OutputFormat { Csv, Json };

std::string axis_name(SweepAxis a);
SweepAxis parse_axis(const std::string& name);

struct SweepGrid {
    double min{0.0};
    double max{1.0};
    std::size_t points{2};
    GridSpacing spacing{GridSpacing::Linear};

    void validate() const;
    std::vector<double> values() const;
};

struct SweepConfig {
    SweepAxis axis{SweepAxis::Beta};
    SweepGrid grid{};
    SensingRun base{};  // fixed parameters; the swept quantity is overwritten
    std::string output_path{};
    OutputFormat format{OutputFormat::Csv};
};

struct SweepRow {
    double swept{0.0};
    std::string regime;
    double j_collective{0.0};  // mean collective coupling across the cluster
    double gamma{0.0};
    SensitivityKind kind{SensitivityKind::Finite};
    double s_max{0.0};
    double t_opt{0.0};
    std::optional<double> high_beta{};
    std::optional<double> s_at_t{};  // only on the Time axis
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);

// Column contract: swept_value, regime, Gamma, S_max, t_opt,
// S_max_high_beta_approx, then J_collective (and S for Time sweeps).
Table sweep_table(const SweepConfig& config, const std::vector<SweepRow>& rows);

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

enum class FigurePreset { Fig1e, Fig2a, Fig2b, Fig2c, Fig2d, Fig2e, Fig2f, Fig3a, Fig3b, Fig3c };

FigurePreset parse_figure_preset(const std::string& name);  // "fig2a", ...
std::string figure_preset_name(FigurePreset p);

struct FigureCurve {
    std::string name;   // file suffix, e.g. "strong_fm"
    SweepConfig config;
};

std::vector<FigureCurve> figure_curves(FigurePreset preset);

}  // namespace spinsense
