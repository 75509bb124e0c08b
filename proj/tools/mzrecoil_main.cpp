// mzrecoil: three-grating atom interferometer with photon recoil.
// Subcommands: sweep-analytic, sweep-numeric, carpet, overlay.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "mzrecoil/config.hpp"
#include "mzrecoil/csv.hpp"
#include "mzrecoil/parallel.hpp"
#include "mzrecoil/pipeline.hpp"

namespace {

using namespace mzr;

ArrayXd dp_grid(const RunConfig& rc) {
    const double li = rc.pipeline.photon.wavelength_i;
    return li * ArrayXd::LinSpaced(rc.sweep.points, rc.sweep.dp_over_lambda_i_min,
                                   rc.sweep.dp_over_lambda_i_max);
}

void write_or_print(const CsvWriter& csv, const std::string& path) {
    if (path.empty())
        std::fwrite(csv.str().data(), 1, csv.str().size(), stdout);
    else
        csv.save(path);
}

int cmd_sweep_analytic(const RunConfig& rc, const std::string& out, SweepMode mode) {
    const VisibilityCurve curve = sweep_curve(rc.distribution, dp_grid(rc), mode);
    CsvWriter csv({"dp_over_lambda_i", "visibility", "phase_rad", "phase_unwrapped_rad"});
    for (Index i = 0; i < curve.dp_over_lambda_i.size(); ++i)
        csv.row({curve.dp_over_lambda_i[i], curve.visibility[i], curve.phase_rad[i],
                 curve.phase_unwrapped[i]});
    write_or_print(csv, out);
    return 0;
}

int cmd_sweep_numeric(const RunConfig& rc, const std::string& out) {
    const ArrayXd dps = dp_grid(rc);
    const double y_max =
        y_prime_for_dp(rc.pipeline.beam, rc.pipeline.grating, dps[dps.size() - 1]);
    if (y_max > rc.pipeline.geometry.y12 * (1 + 1e-12))
        throw config_error("dp_over_lambda_i_max",
                           "laser position exceeds y12 for the requested sweep");

    const Interferometer ifm(rc.pipeline);
    struct Row {
        double dp_li, vis, phase, resid;
    };
    std::vector<Row> rows(dps.size());
    parallel_for(static_cast<std::size_t>(dps.size()), rc.threads, [&](std::size_t i) {
        const double dp = dps[static_cast<Index>(i)];
        const double yp = y_prime_for_dp(rc.pipeline.beam, rc.pipeline.grating, dp);
        const auto pt = ifm.ensemble_at(rc.distribution, yp);
        rows[i] = {dp / rc.pipeline.photon.wavelength_i, pt.visibility, pt.phase_rad,
                   pt.residual_rms};
    });

    ArrayXd wrapped(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) wrapped[static_cast<Index>(i)] = rows[i].phase;
    const ArrayXd unwrapped = unwrap_phases(wrapped);

    CsvWriter csv(
        {"dp_over_lambda_i", "visibility", "phase_rad", "phase_unwrapped_rad", "residual"});
    for (std::size_t i = 0; i < rows.size(); ++i)
        csv.row({rows[i].dp_li, rows[i].vis, rows[i].phase, unwrapped[static_cast<Index>(i)],
                 rows[i].resid});
    write_or_print(csv, out);
    return 0;
}

int cmd_carpet(const RunConfig& rc, const std::string& out) {
    const CarpetSpec& cs = rc.carpet;
    if (cs.y_min < 0.0 || cs.y_max > rc.pipeline.geometry.y12 || cs.y_max < cs.y_min)
        throw config_error("carpet_y_max", "carpet range must lie inside [0, y12]");
    const Interferometer ifm(rc.pipeline);
    const ArrayXd x = ifm.source().grid.x();
    CsvWriter csv({"x_m", "y_m", "intensity"});
    for (int s = 0; s < cs.slices; ++s) {
        const double y = cs.slices == 1
                             ? cs.y_min
                             : cs.y_min + (cs.y_max - cs.y_min) * s / (cs.slices - 1);
        const ArrayXd I = ifm.intensity_slice(y);
        for (Index m = 0; m < x.size(); ++m) csv.row({x[m], y, I[m]});
    }
    write_or_print(csv, out);
    return 0;
}

int cmd_overlay(const RunConfig& rc, const std::string& overlay_path, const std::string& out,
                SweepMode mode) {
    const VisibilityCurve curve = sweep_curve(rc.distribution, dp_grid(rc), mode);

    struct ExpPoint {
        double dp_li, value;
        std::string kind;
        Index nearest;
    };
    std::vector<ExpPoint> pts;
    if (!overlay_path.empty()) {
        const CsvTable t = read_csv(overlay_path);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto& row = t.rows[r];
            if (row.size() != 3)
                throw config_error("overlay", "line " + std::to_string(r + 2) +
                                                  ": expected dp_over_lambda_i,value,kind");
            ExpPoint p;
            try {
                p.dp_li = std::stod(row[0]);
                p.value = std::stod(row[1]);
            } catch (const std::exception&) {
                throw config_error("overlay",
                                   "line " + std::to_string(r + 2) + ": non-numeric field");
            }
            p.kind = row[2];
            if (p.kind != "contrast" && p.kind != "phase")
                throw config_error("overlay", "line " + std::to_string(r + 2) +
                                                  ": kind must be 'contrast' or 'phase'");
            if (p.dp_li < 0.0)
                throw config_error("overlay", "line " + std::to_string(r + 2) +
                                                  ": dp_over_lambda_i must be nonnegative");
            // nearest model point
            Index best = 0;
            double bestd = std::abs(curve.dp_over_lambda_i[0] - p.dp_li);
            for (Index i = 1; i < curve.dp_over_lambda_i.size(); ++i) {
                const double d = std::abs(curve.dp_over_lambda_i[i] - p.dp_li);
                if (d < bestd) {
                    bestd = d;
                    best = i;
                }
            }
            p.nearest = best;
            pts.push_back(std::move(p));
        }
    }

    CsvWriter csv({"dp_over_lambda_i", "visibility", "phase_rad", "phase_unwrapped_rad",
                   "exp_kind", "exp_dp_over_lambda_i", "exp_value", "abs_deviation"});
    for (Index i = 0; i < curve.dp_over_lambda_i.size(); ++i) {
        bool emitted = false;
        for (const auto& p : pts) {
            if (p.nearest != i) continue;
            const double model =
                p.kind == "contrast" ? curve.visibility[i] : curve.phase_unwrapped[i];
            csv.row_mixed({CsvWriter::format(curve.dp_over_lambda_i[i]),
                           CsvWriter::format(curve.visibility[i]),
                           CsvWriter::format(curve.phase_rad[i]),
                           CsvWriter::format(curve.phase_unwrapped[i]), p.kind,
                           CsvWriter::format(p.dp_li), CsvWriter::format(p.value),
                           CsvWriter::format(std::abs(p.value - model))});
            emitted = true;
        }
        if (!emitted)
            csv.row_mixed({CsvWriter::format(curve.dp_over_lambda_i[i]),
                           CsvWriter::format(curve.visibility[i]),
                           CsvWriter::format(curve.phase_rad[i]),
                           CsvWriter::format(curve.phase_unwrapped[i]), "", "", "", ""});
    }
    write_or_print(csv, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-grating atom interferometer with photon recoil"};
    app.require_subcommand(1);

    std::string config_path, out_path, dist_name, mode_name = "analytic", overlay_path;
    int points = -1;

    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--out", out_path, "output CSV path (stdout when omitted)");
    app.add_option("--distribution", dist_name, "override the configured distribution variant");
    app.add_option("--points", points, "override the sweep point count");
    app.add_option("--mode", mode_name, "curve evaluation: analytic|numeric")
        ->check(CLI::IsMember({"analytic", "numeric"}));

    auto* sa = app.add_subcommand("sweep-analytic", "closed-form visibility/phase sweep");
    auto* sn = app.add_subcommand("sweep-numeric", "full wave-propagation sweep");
    auto* cp = app.add_subcommand("carpet", "intensity slices between G1 and G2");
    auto* ov = app.add_subcommand("overlay", "merge a model curve with experimental points");
    ov->add_option("--overlay", overlay_path, "experimental points CSV")->required();
    // global flags may follow the subcommand name
    for (auto* sub : {sa, sn, cp, ov}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        KeyValueFile kv = KeyValueFile::load(config_path);
        RunConfig rc = RunConfig::from_kv(kv);
        for (const auto& k : kv.unused())
            std::cerr << "warning: unused config key '" << k << "'\n";
        if (!dist_name.empty())
            rc.distribution = parse_distribution(
                dist_name, rc.pipeline.photon.wavenumber_i, kv.number_or("N", 0.7),
                kv.number_or("eta", 0.0), kv.number_or("epsilon", 1.0),
                kv.number_or("k1_over_ki", 0.0), kv.number_or("k2_over_ki", 2.0),
                kv.number_or("k_delta_over_ki", 0.7), kv.text_or("tabulated_path", ""));
        if (points > 0) rc.sweep.points = points;
        if (points == 0 || points == 1) throw config_error("points", "need >= 2");
        const SweepMode mode =
            mode_name == "numeric" ? SweepMode::Numeric : SweepMode::Analytic;

        if (sa->parsed()) return cmd_sweep_analytic(rc, out_path, mode);
        if (sn->parsed()) return cmd_sweep_numeric(rc, out_path);
        if (cp->parsed()) return cmd_carpet(rc, out_path);
        if (ov->parsed()) return cmd_overlay(rc, overlay_path, out_path, mode);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
