#include "mzrecoil/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace mzr {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

KeyValueFile KeyValueFile::from_string(const std::string& text) {
    KeyValueFile kv;
    std::stringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config line " + std::to_string(lineno) + ": empty key or value");
        kv.values_[key] = value;
    }
    return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

bool KeyValueFile::has(const std::string& key) const { return values_.count(key) != 0; }

double KeyValueFile::number(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw config_error(key, "missing");
    touched_[key] = true;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw config_error(key, "not a number: '" + it->second + "'");
    }
}

double KeyValueFile::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

int KeyValueFile::integer(const std::string& key) const {
    const double v = number(key);
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9) throw config_error(key, "not an integer");
    return i;
}

int KeyValueFile::integer_or(const std::string& key, int fallback) const {
    return has(key) ? integer(key) : fallback;
}

std::string KeyValueFile::text_or(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    touched_[key] = true;
    return it->second;
}

std::vector<std::string> KeyValueFile::unused() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (!touched_.count(k)) out.push_back(k);
    return out;
}

RunConfig RunConfig::from_kv(const KeyValueFile& kv) {
    RunConfig rc;
    PipelineSettings& ps = rc.pipeline;
    ps.beam = BeamSpec::from_wavenumber(kv.number("speed"), kv.number("k"));
    if (kv.has("lambda_i"))
        ps.photon = PhotonSpec::from_wavelength(kv.number("lambda_i"));
    else
        throw config_error("lambda_i", "missing");
    ps.grating.period_dg = kv.number("d_g");
    ps.grating.open_width_delta = kv.number("delta");
    ps.grating.illuminated_slits_n = kv.integer("n_slits");
    ps.geometry.y12 = kv.number("y12");
    ps.geometry.y23 = kv.number("y23");
    ps.geometry.y_prime_12 = kv.number_or("y_prime_12", 0.0);
    ps.grid.spacing = kv.number("grid_spacing");
    ps.grid.extent = kv.number("grid_extent");

    const std::string env = kv.text_or("envelope", "tophat");
    if (env == "tophat") ps.envelope = EnvelopeKind::TopHat;
    else if (env == "raised-cosine") ps.envelope = EnvelopeKind::RaisedCosine;
    else throw config_error("envelope", "expected 'tophat' or 'raised-cosine'");

    ps.band_limit_kx = kv.number_or("band_limit_kx", -1.0);
    if (kv.has("window_halfwidth")) {
        ps.window.center = kv.number_or("window_center", 0.0);
        ps.window.halfwidth = kv.number("window_halfwidth");
    }
    ps.scan_periods = kv.integer_or("scan_periods", 2);
    ps.scan_points_per_period = kv.integer_or("scan_points_per_period", 16);
    ps.kick_nodes = kv.integer_or("kick_nodes", 129);

    rc.distribution = parse_distribution(
        kv.text_or("variant", "mandel"), ps.photon.wavenumber_i, kv.number_or("N", 0.7),
        kv.number_or("eta", 0.0), kv.number_or("epsilon", 1.0), kv.number_or("k1_over_ki", 0.0),
        kv.number_or("k2_over_ki", 2.0), kv.number_or("k_delta_over_ki", 0.7),
        kv.text_or("tabulated_path", ""));

    rc.sweep.dp_over_lambda_i_min = kv.number_or("dp_over_lambda_i_min", 0.0);
    rc.sweep.dp_over_lambda_i_max = kv.number_or("dp_over_lambda_i_max", 2.0);
    rc.sweep.points = kv.integer_or("sweep_points", 201);
    if (rc.sweep.points < 2) throw config_error("sweep_points", "need >= 2");
    if (!(rc.sweep.dp_over_lambda_i_max > rc.sweep.dp_over_lambda_i_min))
        throw config_error("dp_over_lambda_i_max", "must exceed dp_over_lambda_i_min");
    if (rc.sweep.dp_over_lambda_i_min < 0.0)
        throw config_error("dp_over_lambda_i_min", "must be nonnegative");

    rc.carpet.y_min = kv.number_or("carpet_y_min", 0.0);
    rc.carpet.y_max = kv.number_or("carpet_y_max", ps.geometry.y12);
    rc.carpet.slices = kv.integer_or("carpet_slices", 33);
    if (rc.carpet.slices < 1) throw config_error("carpet_slices", "need >= 1");

    rc.threads = kv.integer_or("threads", 1);
    if (rc.threads < 1) throw config_error("threads", "need >= 1");
    rc.output_path = kv.text_or("output", "");
    return rc;
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_kv(KeyValueFile::load(path));
}

} // namespace mzr
