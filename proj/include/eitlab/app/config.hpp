#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eitlab/eit/lambda_system.hpp"
#include "eitlab/eit/spectrum.hpp"
#include "eitlab/eit/storage.hpp"
#include "eitlab/holography/holography.hpp"
#include "eitlab/lg/lg_beams.hpp"
#include "eitlab/numerics/grid.hpp"
#include "json.hpp"

namespace eitlab::app {

using Json = nlohmann::json;

/// Rejected configuration: unreadable, malformed, unknown key or failed precondition.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Optics quantities are in meters, EIT quantities in units of gamma.
struct RunConfig {
    std::filesystem::path output = "out";
    unsigned threads = 0;
    int image_bits = 8;

    struct Grid {
        std::size_t n = 512;
        double extent = 8e-3;
    } grid;

    struct Mode {
        int ell = 1;
        int p = 0;
        double waist = 1e-3;
        double wavelength = 795e-9;
        double z = 0.0;
    } mode;

    struct Hologram {
        int charge = 1;
        double period = 100e-6;
        holo::HologramKind kind = holo::HologramKind::AmplitudeSinusoidal;
        double focal_length = 0.5;
    } hologram;

    struct Eit {
        double gamma_bc = 0.15;
        double branch_b = 0.5;
        double omega_p = 1e-3;
        double omega_c = 1.0;
        double delta_c = 0.0;
        double delta_min = -5.0;
        double delta_max = 5.0;
        std::size_t n_points = 2001;
        eit::SpectrumMethod method = eit::SpectrumMethod::SteadyState;
        eit::WidthConvention width_convention = eit::WidthConvention::AbsoluteHalfMax;
        std::vector<double> scan_gamma_bc{0.0, 0.15, 0.25};
        std::vector<double> control_intensities = default_intensities();
    } eit;

    eit::StorageProtocol storage;

    /// 0.05, 0.10, ..., 2.00
    static std::vector<double> default_intensities() {
        std::vector<double> v(40);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k + 1) / 20.0;
        return v;
    }

    [[nodiscard]] numerics::Grid2D make_grid() const { return numerics::Grid2D::square(grid.n, grid.extent); }

    [[nodiscard]] lg::LGMode make_mode() const { return {mode.ell, mode.p, mode.waist, mode.wavelength}; }

    [[nodiscard]] eit::LambdaSystem make_system() const {
        eit::LambdaSystem s;
        s.gamma = 1.0;
        s.gamma_bc = eit.gamma_bc;
        s.branch_b = eit.branch_b;
        s.branch_c = 1.0 - eit.branch_b;
        s.omega_p = eit.omega_p;
        s.omega_c = eit.omega_c;
        s.delta_c = eit.delta_c;
        return s;
    }

    [[nodiscard]] eit::SpectrumSettings spectrum_settings() const {
        return {eit.delta_min, eit.delta_max, eit.n_points, eit.method, eit.width_convention};
    }

    void validate() const;
    /// Period and focal length checks, needed only by the hologram command.
    void validate_hologram() const;
};

inline Json to_json(const RunConfig& c) {
    return Json{
        {"output", c.output.string()},
        {"threads", c.threads},
        {"image_bits", c.image_bits},
        {"grid", {{"n", c.grid.n}, {"extent", c.grid.extent}}},
        {"mode",
         {{"ell", c.mode.ell},
          {"p", c.mode.p},
          {"waist", c.mode.waist},
          {"wavelength", c.mode.wavelength},
          {"z", c.mode.z}}},
        {"hologram",
         {{"charge", c.hologram.charge},
          {"period", c.hologram.period},
          {"kind", std::string(holo::to_string(c.hologram.kind))},
          {"focal_length", c.hologram.focal_length}}},
        {"eit",
         {{"gamma_bc", c.eit.gamma_bc},
          {"branch_b", c.eit.branch_b},
          {"omega_p", c.eit.omega_p},
          {"omega_c", c.eit.omega_c},
          {"delta_c", c.eit.delta_c},
          {"delta_min", c.eit.delta_min},
          {"delta_max", c.eit.delta_max},
          {"n_points", c.eit.n_points},
          {"method", std::string(eit::to_string(c.eit.method))},
          {"width_convention", std::string(eit::to_string(c.eit.width_convention))},
          {"scan_gamma_bc", c.eit.scan_gamma_bc},
          {"control_intensities", c.eit.control_intensities}}},
        {"storage",
         {{"omega_p_peak", c.storage.omega_p_peak},
          {"omega_c_peak", c.storage.omega_c_peak},
          {"pulse_width", c.storage.pulse_width},
          {"ramp_time", c.storage.ramp_time},
          {"storage_time", c.storage.storage_time},
          {"retrieval_time", c.storage.retrieval_time},
          {"sample_interval", c.storage.sample_interval}}},
    };
}

namespace detail {

inline double get_real(const Json& j, const char* key, const std::string& where) {
    const Json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

inline long long get_integer(const Json& j, const char* key, const std::string& where) {
    const Json& v = j.at(key);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    throw ConfigError(where + "." + key + ": expected an integer");
}

inline std::size_t get_count(const Json& j, const char* key, const std::string& where) {
    const long long v = get_integer(j, key, where);
    if (v < 0) throw ConfigError(where + "." + key + ": must be non-negative");
    return static_cast<std::size_t>(v);
}

inline std::string get_string(const Json& j, const char* key, const std::string& where) {
    const Json& v = j.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

inline std::vector<double> get_reals(const Json& j, const char* key, const std::string& where) {
    const Json& v = j.at(key);
    if (!v.is_array()) throw ConfigError(where + "." + key + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(where + "." + key + ": expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

/// Overlays `patch` onto `base`. Every key in `patch` must already exist in `base`.
inline void merge(Json& base, const Json& patch, const std::string& where) {
    if (!patch.is_object()) throw ConfigError((where.empty() ? "config" : where) + ": expected an object");
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        const std::string path = where.empty() ? it.key() : where + "." + it.key();
        if (!base.contains(it.key())) throw ConfigError("unknown key: " + path);
        Json& slot = base[it.key()];
        if (slot.is_object())
            merge(slot, it.value(), path);
        else
            slot = it.value();
    }
}

}  // namespace detail

inline RunConfig from_json(const Json& j) {
    using namespace detail;
    RunConfig c;
    c.output = get_string(j, "output", "config");
    c.threads = static_cast<unsigned>(get_count(j, "threads", "config"));
    c.image_bits = static_cast<int>(get_integer(j, "image_bits", "config"));

    const Json& g = j.at("grid");
    c.grid.n = get_count(g, "n", "grid");
    c.grid.extent = get_real(g, "extent", "grid");

    const Json& m = j.at("mode");
    c.mode.ell = static_cast<int>(get_integer(m, "ell", "mode"));
    c.mode.p = static_cast<int>(get_integer(m, "p", "mode"));
    c.mode.waist = get_real(m, "waist", "mode");
    c.mode.wavelength = get_real(m, "wavelength", "mode");
    c.mode.z = get_real(m, "z", "mode");

    const Json& h = j.at("hologram");
    c.hologram.charge = static_cast<int>(get_integer(h, "charge", "hologram"));
    c.hologram.period = get_real(h, "period", "hologram");
    c.hologram.focal_length = get_real(h, "focal_length", "hologram");
    try {
        c.hologram.kind = holo::hologram_kind_from_string(get_string(h, "kind", "hologram"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("hologram.kind: ") + e.what());
    }

    const Json& e = j.at("eit");
    c.eit.gamma_bc = get_real(e, "gamma_bc", "eit");
    c.eit.branch_b = get_real(e, "branch_b", "eit");
    c.eit.omega_p = get_real(e, "omega_p", "eit");
    c.eit.omega_c = get_real(e, "omega_c", "eit");
    c.eit.delta_c = get_real(e, "delta_c", "eit");
    c.eit.delta_min = get_real(e, "delta_min", "eit");
    c.eit.delta_max = get_real(e, "delta_max", "eit");
    c.eit.n_points = get_count(e, "n_points", "eit");
    try {
        c.eit.method = eit::spectrum_method_from_string(get_string(e, "method", "eit"));
        c.eit.width_convention = eit::width_convention_from_string(get_string(e, "width_convention", "eit"));
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("eit: ") + ex.what());
    }
    c.eit.scan_gamma_bc = get_reals(e, "scan_gamma_bc", "eit");
    c.eit.control_intensities = get_reals(e, "control_intensities", "eit");

    const Json& s = j.at("storage");
    c.storage.omega_p_peak = get_real(s, "omega_p_peak", "storage");
    c.storage.omega_c_peak = get_real(s, "omega_c_peak", "storage");
    c.storage.pulse_width = get_real(s, "pulse_width", "storage");
    c.storage.ramp_time = get_real(s, "ramp_time", "storage");
    c.storage.storage_time = get_real(s, "storage_time", "storage");
    c.storage.retrieval_time = get_real(s, "retrieval_time", "storage");
    c.storage.sample_interval = get_real(s, "sample_interval", "storage");
    return c;
}

inline void RunConfig::validate() const {
    try {
        if (output.empty()) throw ConfigError("output: must not be empty");
        if (image_bits != 8 && image_bits != 16) throw ConfigError("image_bits: must be 8 or 16");
        static_cast<void>(make_grid());
        static_cast<void>(make_mode());
        if (!std::isfinite(mode.z)) throw ConfigError("mode.z: must be finite");

        if (!(std::isfinite(hologram.period) && hologram.period > 0.0))
            throw ConfigError("hologram.period: must be positive");
        if (!(std::isfinite(hologram.focal_length) && hologram.focal_length > 0.0))
            throw ConfigError("hologram.focal_length: must be positive");

        make_system().validate();
        if (!(eit.omega_p > 0.0)) throw ConfigError("eit.omega_p: must be positive");
        if (eit.n_points < 3) throw ConfigError("eit.n_points: must be >= 3");
        if (!(std::isfinite(eit.delta_min) && std::isfinite(eit.delta_max) && eit.delta_min < eit.delta_max))
            throw ConfigError("eit: delta_min must be below delta_max");
        if (eit.scan_gamma_bc.empty()) throw ConfigError("eit.scan_gamma_bc: must not be empty");
        for (double v : eit.scan_gamma_bc)
            if (!(std::isfinite(v) && v >= 0.0)) throw ConfigError("eit.scan_gamma_bc: entries must be >= 0");
        const auto& ci = eit.control_intensities;
        if (ci.size() < 2) throw ConfigError("eit.control_intensities: at least two entries are required");
        for (std::size_t k = 0; k < ci.size(); ++k) {
            if (!(std::isfinite(ci[k]) && ci[k] >= 0.0))
                throw ConfigError("eit.control_intensities: entries must be >= 0");
            if (k > 0 && !(ci[k] > ci[k - 1]))
                throw ConfigError("eit.control_intensities: must be strictly increasing");
        }
        storage.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

inline void RunConfig::validate_hologram() const {
    const double min_period = 2.0 * make_grid().dx();
    if (!(hologram.period > min_period))
        throw ConfigError("hologram.period: must exceed two grid cells (" + std::to_string(min_period) + " m)");
    if (!(mode.wavelength < hologram.period))
        throw ConfigError("hologram.period: first order is evanescent at this wavelength");
}

/// Parses "a.b.c=value". The value is read as JSON when possible, else as a string.
inline Json override_patch(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + assignment);
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    Json value = Json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto dot = key.find('.', start);
        parts.push_back(key.substr(start, dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    Json patch = std::move(value);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (it->empty()) throw ConfigError("override has an empty key segment: " + key);
        patch = Json{{*it, std::move(patch)}};
    }
    return patch;
}

/// Defaults, then the document (if any), then the overrides, then validation.
inline RunConfig load_config(const Json* document, const std::vector<std::string>& overrides = {}) {
    Json merged = to_json(RunConfig{});
    try {
        if (document) detail::merge(merged, *document, "");
        for (const auto& o : overrides) detail::merge(merged, override_patch(o), "");
        RunConfig c = from_json(merged);
        c.validate();
        return c;
    } catch (const Json::exception& e) {
        throw ConfigError(e.what());
    }
}

inline RunConfig load_config_file(const std::filesystem::path& path, const std::vector<std::string>& overrides = {}) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file " + path.string());
    Json doc = Json::parse(is, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config file is not valid JSON: " + path.string());
    return load_config(&doc, overrides);
}

}  // namespace eitlab::app
