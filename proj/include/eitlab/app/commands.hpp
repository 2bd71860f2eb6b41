#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "eitlab/app/config.hpp"
#include "eitlab/eit/spectrum.hpp"
#include "eitlab/eit/storage.hpp"
#include "eitlab/holography/holography.hpp"
#include "eitlab/io/csv.hpp"
#include "eitlab/io/pgm.hpp"
#include "eitlab/lg/lg_beams.hpp"

namespace eitlab::app {

namespace fs = std::filesystem;

using Outputs = std::vector<fs::path>;

namespace detail {

inline fs::path prepare_output(const RunConfig& c) {
    std::error_code ec;
    fs::create_directories(c.output, ec);
    if (ec) throw io::IoError("cannot create output directory " + c.output.string() + ": " + ec.message());
    return c.output;
}

inline void write_json(const fs::path& path, const Json& j) { io::write_text(path, j.dump(2) + "\n"); }

inline std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline Json grid_json(const RunConfig& c) { return {{"n", c.grid.n}, {"extent", c.grid.extent}}; }

inline Json system_json(const eit::LambdaSystem& s) {
    return {{"gamma", s.gamma},     {"gamma_bc", s.gamma_bc}, {"branch_b", s.branch_b}, {"branch_c", s.branch_c},
            {"omega_p", s.omega_p}, {"omega_c", s.omega_c},   {"delta_c", s.delta_c}};
}

inline Json settings_json(const eit::SpectrumSettings& s) {
    return {{"delta_min", s.delta_min},
            {"delta_max", s.delta_max},
            {"n_points", s.n_points},
            {"method", std::string(eit::to_string(s.method))},
            {"width_convention", std::string(eit::to_string(s.convention))}};
}

}  // namespace detail

/// lg_<ell>_<p>.pgm and lg_<ell>_<p>.json
inline Outputs cmd_lg_render(const RunConfig& c) {
    const auto mode = c.make_mode();
    const auto field = lg::render_mode(mode, c.make_grid(), c.mode.z);
    const double power = numerics::power(field);
    const double peak = lg::peak_radius(field);
    const auto oam = lg::oam_spectrum(field, std::max(8, std::abs(mode.ell) + 4));

    const fs::path dir = detail::prepare_output(c);
    const std::string stem = "lg_" + std::to_string(mode.ell) + "_" + std::to_string(mode.p);
    const fs::path image = dir / (stem + ".pgm");
    const fs::path report = dir / (stem + ".json");
    io::write_pgm(image, io::intensity_image(field, c.image_bits));
    detail::write_json(report, Json{{"ell", mode.ell},
                                    {"p", mode.p},
                                    {"waist", mode.w0},
                                    {"wavelength", mode.wavelength},
                                    {"z", c.mode.z},
                                    {"grid", detail::grid_json(c)},
                                    {"power", power},
                                    {"peak_radius", peak},
                                    {"expected_peak_radius", mode.w0 * std::sqrt(std::abs(mode.ell) / 2.0)},
                                    {"oam_mean", oam.mean_ell},
                                    {"oam_captured", oam.captured}});
    return {image, report};
}

/// grating_<charge>.pgm, order_<charge>_near.pgm, order_<charge>_far.pgm and purity.csv
inline Outputs cmd_holo(const RunConfig& c) {
    c.validate_hologram();
    holo::GenerationOptions options;
    options.focal_length = c.hologram.focal_length;
    const auto r = holo::simulate_generation(c.mode.waist, c.mode.wavelength, c.hologram.charge, c.hologram.period,
                                             c.hologram.kind, c.make_grid(), options);

    std::vector<double> mask(r.pattern.values().begin(), r.pattern.values().end());
    if (!holo::is_amplitude(r.pattern.kind()))
        for (double& v : mask) v /= 2.0 * std::numbers::pi;

    const fs::path dir = detail::prepare_output(c);
    const std::string tag = std::to_string(c.hologram.charge);
    const fs::path grating = dir / ("grating_" + tag + ".pgm");
    const fs::path near = dir / ("order_" + tag + "_near.pgm");
    const fs::path far = dir / ("order_" + tag + "_far.pgm");
    const fs::path table = dir / "purity.csv";

    io::write_pgm(grating, io::grid_image(r.pattern.grid(), mask, c.image_bits));
    io::write_pgm(near, io::intensity_image(r.field, c.image_bits));
    io::write_pgm(far, io::intensity_image(r.focal_field, c.image_bits));

    io::CsvTable csv;
    csv.header = {"charge", "kind", "purity", "dominant_ell", "dominant_p", "fitted_waist", "order_efficiency",
                  "on_axis_ratio"};
    csv.rows.push_back({std::to_string(c.hologram.charge), std::string(holo::to_string(c.hologram.kind)),
                        io::format_number(r.purity), std::to_string(r.dominant_mode.ell),
                        std::to_string(r.dominant_mode.p), io::format_number(r.dominant_mode.w0),
                        io::format_number(r.order_efficiency), io::format_number(holo::on_axis_ratio(r.focal_field))});
    io::write_csv(table, csv);
    return {grating, near, far, table};
}

/// spectrum.csv and spectrum.json
inline Outputs cmd_eit_spectrum(const RunConfig& c) {
    const auto sys = c.make_system();
    const auto settings = c.spectrum_settings();
    const auto spec =
        eit::absorption_spectrum(sys, settings.delta_min, settings.delta_max, settings.n_points, settings.method,
                                 c.threads);
    const auto width = eit::transparency_width(spec, settings.convention);

    const fs::path dir = detail::prepare_output(c);
    const fs::path data = dir / "spectrum.csv";
    const fs::path meta = dir / "spectrum.json";
    io::CsvTable csv;
    csv.header = {"detuning", "absorption"};
    for (std::size_t k = 0; k < spec.detunings.size(); ++k)
        csv.rows.push_back({io::format_number(spec.detunings[k]), io::format_number(spec.absorption[k])});
    io::write_csv(data, csv);
    detail::write_json(meta, Json{{"system", detail::system_json(sys)},
                                  {"settings", detail::settings_json(settings)},
                                  {"width", width.width},
                                  {"has_dip", width.has_dip},
                                  {"half_max_threshold", width.threshold}});
    return {data, meta};
}

/// widths_gbc_<value>.csv and widths_gbc_<value>.json for every scanned gamma_bc
inline Outputs cmd_width_scan(const RunConfig& c) {
    const auto sys = c.make_system();
    const auto settings = c.spectrum_settings();
    std::vector<eit::WindowScan> scans;
    for (double g : c.eit.scan_gamma_bc)
        scans.push_back(eit::width_scan(sys, g, c.eit.control_intensities, settings, c.threads));

    const fs::path dir = detail::prepare_output(c);
    Outputs out;
    for (const auto& scan : scans) {
        const std::string stem = "widths_gbc_" + detail::short_number(scan.gamma_bc);
        io::CsvTable csv;
        csv.header = {"control_intensity", "width"};
        for (std::size_t k = 0; k < scan.widths.size(); ++k)
            csv.rows.push_back({io::format_number(scan.control_intensities[k]), io::format_number(scan.widths[k])});
        const double open = scan.first_open_intensity();
        eit::LambdaSystem s = sys;
        s.gamma_bc = scan.gamma_bc;
        out.push_back(dir / (stem + ".csv"));
        io::write_csv(out.back(), csv);
        out.push_back(dir / (stem + ".json"));
        detail::write_json(out.back(), Json{{"gamma_bc", scan.gamma_bc},
                                            {"system", detail::system_json(s)},
                                            {"settings", detail::settings_json(settings)},
                                            {"first_open_intensity", std::isnan(open) ? Json(nullptr) : Json(open)}});
    }
    return out;
}

/// trajectory.csv and storage.json
inline Outputs cmd_store(const RunConfig& c) {
    const auto sys = c.make_system();
    const auto r = eit::store_and_retrieve(sys, c.storage);

    const fs::path dir = detail::prepare_output(c);
    const fs::path data = dir / "trajectory.csv";
    const fs::path meta = dir / "storage.json";
    io::CsvTable csv;
    csv.header = {"t", "abs_rho_bc", "abs_rho_ab", "rho_aa"};
    const auto& tr = r.trajectory;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const auto& rho = tr.states[k];
        csv.rows.push_back({io::format_number(tr.times[k]), io::format_number(std::abs(rho(eit::B, eit::C))),
                            io::format_number(std::abs(rho(eit::A, eit::B))),
                            io::format_number(rho(eit::A, eit::A).real())});
    }
    io::write_csv(data, csv);
    const auto& p = c.storage;
    detail::write_json(meta, Json{{"system", detail::system_json(sys)},
                                  {"protocol",
                                   {{"omega_p_peak", p.omega_p_peak},
                                    {"omega_c_peak", p.omega_c_peak},
                                    {"pulse_width", p.pulse_width},
                                    {"ramp_time", p.ramp_time},
                                    {"storage_time", p.storage_time},
                                    {"retrieval_time", p.retrieval_time},
                                    {"sample_interval", p.sample_interval}}},
                                  {"store_time", r.t1},
                                  {"release_time", r.t2},
                                  {"stored_coherence", r.stored_coherence},
                                  {"coherence_at_release", r.coherence_at_release},
                                  {"survival", r.survival},
                                  {"expected_survival", std::exp(-sys.gamma_bc * p.storage_time)},
                                  {"decay_law_deviation", r.decay_law_deviation},
                                  {"write_peak", r.write_peak},
                                  {"retrieved_peak", r.retrieved_peak},
                                  {"efficiency", r.efficiency}});
    return {data, meta};
}

}  // namespace eitlab::app
