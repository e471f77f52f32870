#include "qpurify/runner.hpp"

#include "qpurify/rng.hpp"
#include "qpurify/tomo.hpp"

#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qpurify {

namespace {

using nlohmann::json;

std::vector<std::pair<double, double>> grid_points(const RunConfig& config) {
    if (config.zeta_kappa.has_value()) {
        return {*config.zeta_kappa};
    }
    std::vector<std::pair<double, double>> points;
    points.reserve(config.xi_grid.size());
    for (double xi : config.xi_grid) {
        points.emplace_back(xi, xi);
    }
    if (points.empty()) {
        throw std::invalid_argument("run: empty grid; give xi values or a (zeta, kappa) point");
    }
    return points;
}

RunRecord ideal_record(const RunConfig& config, double zeta, double kappa) {
    const IdealPoint pt = ideal_point(zeta, kappa);
    RunRecord rec;
    rec.state_label = config.state.label();
    rec.xi = pt.xi;
    rec.xi_p_ideal = pt.xi_p;
    rec.eta_ideal = pt.eta;
    rec.p_ideal = pt.p;
    rec.seed = config.seed;
    return rec;
}

DensityMatrix channel_average(const PureQubit& phi, const std::array<double, 4>& weights) {
    const ComplexMatrix proj = phi.projector();
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int k = 0; k < 4; ++k) {
        const ComplexMatrix sigma = pauli(static_cast<PauliLabel>(k));
        out += weights[k] * sigma * proj * sigma;
    }
    return DensityMatrix::validated(out);
}

struct ArmTomography {
    TomographyResult off;  // interference off (overlap 0)
    TomographyResult on;   // interference on
};

// Measures both arms with shared per-setting randomness (equal seeds), so the
// count fluctuations of the two arms move together.
ArmTomography paired_tomography(const DensityMatrix& rho_off, const DensityMatrix& rho_on,
                                std::int64_t counts, const std::array<std::uint64_t, 3>& seeds) {
    std::vector<CountRecord> recs_off;
    std::vector<CountRecord> recs_on;
    for (int k = 0; k < 3; ++k) {
        const MeasurementSetting setting =
            MeasurementSetting::standard(static_cast<StokesAxis>(k));
        recs_off.push_back(simulate_counts(rho_off, setting, counts, seeds[k]));
        recs_on.push_back(simulate_counts(rho_on, setting, counts, seeds[k]));
    }
    return ArmTomography{reconstruct(recs_off), reconstruct(recs_on)};
}

// Delta-method standard error of the ratio xi_p_hat / xi_hat, including the
// covariance induced by the shared detection randomness: per axis,
// cov(s_on, s_off) = 4 (min(p_on, p_off) - p_on p_off) / N for counts drawn
// from one uniform sequence.
double eta_std_error(const ArmTomography& arms, const Eigen::Vector3d& axis, std::int64_t counts,
                     double xi_hat, double xi_p_hat, double se_xi, double se_xi_p) {
    double covariance = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double p_off = 0.5 * (1.0 + arms.off.stokes_raw(k));
        const double p_on = 0.5 * (1.0 + arms.on.stokes_raw(k));
        const double cov_s =
            4.0 * (std::min(p_off, p_on) - p_off * p_on) / static_cast<double>(counts);
        covariance += axis(k) * axis(k) * cov_s;
    }
    const double xi2 = xi_hat * xi_hat;
    double var = (se_xi_p * se_xi_p) / xi2 +
                 (xi_p_hat * xi_p_hat) * (se_xi * se_xi) / (xi2 * xi2) -
                 2.0 * xi_p_hat * covariance / (xi2 * xi_hat);
    return std::sqrt(std::max(var, 0.0));
}

json record_json(const RunRecord& rec) {
    json j;
    j["state"] = rec.state_label;
    j["xi"] = rec.xi;
    j["xi_p_ideal"] = rec.xi_p_ideal;
    j["eta_ideal"] = rec.eta_ideal;
    j["p_ideal"] = rec.p_ideal;
    auto set_opt = [&j](const char* key, const std::optional<double>& v) {
        if (v.has_value()) {
            j[key] = *v;
        } else {
            j[key] = nullptr;
        }
    };
    set_opt("xi_hat", rec.xi_hat);
    set_opt("se_xi_hat", rec.se_xi_hat);
    set_opt("xi_p_hat", rec.xi_p_hat);
    set_opt("se_xi_p_hat", rec.se_xi_p_hat);
    set_opt("eta_hat", rec.eta_hat);
    set_opt("se_eta_hat", rec.se_eta_hat);
    set_opt("p_hat", rec.p_hat);
    j["seed"] = rec.seed;
    return j;
}

json config_json(const RunConfig& config) {
    json j;
    j["state"] = config.state.label();
    j["xi_grid"] = config.xi_grid;
    if (config.zeta_kappa.has_value()) {
        j["zeta"] = config.zeta_kappa->first;
        j["kappa"] = config.zeta_kappa->second;
    }
    j["trials"] = config.trials;
    j["counts_per_setting"] = config.counts_per_setting;
    j["bs"] = {{"t_h", config.bs.t_h}, {"t_v", config.bs.t_v}, {"overlap", config.bs.overlap}};
    j["frequency"] = config.frequency;
    j["frequency_ratio"] = config.frequency_ratio;
    j["seed"] = config.seed;
    return j;
}

} // namespace

IdealPoint ideal_point(double zeta, double kappa) {
    if (!(zeta >= 0.0 && zeta <= 1.0) || !(kappa >= 0.0 && kappa <= 1.0)) {
        throw std::invalid_argument("ideal_point: zeta and kappa must lie in [0, 1]");
    }
    const double denom = 3.0 + kappa * zeta;
    return IdealPoint{0.5 * (zeta + kappa), 2.0 * (zeta + kappa) / denom, 4.0 / denom,
                      denom / 4.0};
}

std::vector<RunRecord> run_ideal(const RunConfig& config) {
    std::vector<RunRecord> records;
    for (const auto& [zeta, kappa] : grid_points(config)) {
        records.push_back(ideal_record(config, zeta, kappa));
    }
    return records;
}

std::vector<RunRecord> run_endtoend(const RunConfig& config) {
    if (config.trials < 1 || config.counts_per_setting < 1) {
        throw std::invalid_argument("run_endtoend: trials and counts must be >= 1");
    }
    const PureQubit phi = config.state.resolve();
    const Eigen::Vector3d axis = phi.bloch_axis();
    const std::uint64_t state_seed = derive_seed(config.seed, fnv1a(config.state.label()));

    const auto points = grid_points(config);
    std::vector<RunRecord> records;
    records.reserve(points.size());

    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [zeta, kappa] = points[i];
        RunRecord rec = ideal_record(config, zeta, kappa);

        // Per-point substream keyed on the point's values, not its grid index:
        // a row depends only on (seed, state, zeta, kappa), never on which
        // other points run or in what order.
        const std::uint64_t point_salt =
            derive_seed(std::bit_cast<std::uint64_t>(zeta), std::bit_cast<std::uint64_t>(kappa));
        SplitMix64 point_rng(derive_seed(state_seed, point_salt));
        const std::uint64_t channel_seed = point_rng.next();
        const std::array<std::uint64_t, 3> tomo_seeds{point_rng.next(), point_rng.next(),
                                                      point_rng.next()};

        // Depolarize |phi><phi| through the sampled duty-cycle schedules.
        const ChannelPair pair = ChannelPair::with_duty_cycles(
            0.5 * (1.0 - zeta), 0.5 * (1.0 - kappa), config.frequency, config.frequency_ratio);
        const JointLabelHistogram hist = histogram(
            sample_joint_labels(pair, static_cast<std::size_t>(config.trials), channel_seed));
        const DensityMatrix rho_a = channel_average(phi, hist.marginal_a);
        const DensityMatrix rho_b = channel_average(phi, hist.marginal_b);

        // Interference on (configured overlap) and off (overlap forced to 0).
        const Postselection on =
            postselect_bunched(apply_bs(two_photon_input(rho_a, rho_b, config.bs.overlap),
                                        config.bs));
        const Postselection off =
            postselect_bunched(apply_bs(two_photon_input(rho_a, rho_b, 0.0), config.bs));
        const DensityMatrix single_on = partial_trace(on.rho_sym, PairSlot::First);
        const DensityMatrix single_off = partial_trace(off.rho_sym, PairSlot::First);

        const ArmTomography arms =
            paired_tomography(single_off, single_on, config.counts_per_setting, tomo_seeds);
        const XiEstimate xi_est = xi_estimate(arms.off, phi);
        const XiEstimate xi_p_est = xi_estimate(arms.on, phi);

        rec.xi_hat = xi_est.xi_hat;
        rec.se_xi_hat = xi_est.std_err;
        rec.xi_p_hat = xi_p_est.xi_hat;
        rec.se_xi_p_hat = xi_p_est.std_err;
        // Bunched rate with interference over the distinguishable-pulse
        // reference rate; the analytic ratio at matched transmittances is 2p.
        rec.p_hat = 0.5 * on.prob / off.prob;
        if (xi_est.xi_hat >= kMinXiForGain) {
            rec.eta_hat = xi_p_est.xi_hat / xi_est.xi_hat;
            rec.se_eta_hat = eta_std_error(arms, axis, config.counts_per_setting, xi_est.xi_hat,
                                           xi_p_est.xi_hat, xi_est.std_err, xi_p_est.std_err);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string csv_header() {
    return "state,xi,xi_p_ideal,eta_ideal,p_ideal,xi_hat,se_xi_hat,xi_p_hat,se_xi_p_hat,"
           "eta_hat,se_eta_hat,p_hat,seed";
}

std::string to_csv(const std::vector<RunRecord>& records) {
    std::ostringstream os;
    os << csv_header() << '\n';
    auto opt_field = [](const std::optional<double>& v) {
        return v.has_value() ? format_double(*v) : std::string();
    };
    for (const RunRecord& rec : records) {
        os << rec.state_label << ',' << format_double(rec.xi) << ','
           << format_double(rec.xi_p_ideal) << ',' << format_double(rec.eta_ideal) << ','
           << format_double(rec.p_ideal) << ',' << opt_field(rec.xi_hat) << ','
           << opt_field(rec.se_xi_hat) << ',' << opt_field(rec.xi_p_hat) << ','
           << opt_field(rec.se_xi_p_hat) << ',' << opt_field(rec.eta_hat) << ','
           << opt_field(rec.se_eta_hat) << ',' << opt_field(rec.p_hat) << ',' << rec.seed
           << '\n';
    }
    return os.str();
}

std::string to_json(const std::vector<RunRecord>& records) {
    json arr = json::array();
    for (const RunRecord& rec : records) {
        arr.push_back(record_json(rec));
    }
    return arr.dump(2) + "\n";
}

std::string manifest_json(const RunConfig& config, EmitFormat format, const std::string& path,
                          const std::string& command) {
    json j;
    j["artifact_version"] = kArtifactVersion;
    j["command"] = command;
    j["format"] = (format == EmitFormat::Csv) ? "csv" : "json";
    j["output"] = path;
    j["config"] = config_json(config);
    return j.dump(2) + "\n";
}

void emit(const std::vector<RunRecord>& records, EmitFormat format, const std::string& path,
          const RunConfig& config, const std::string& command) {
    if (records.empty()) {
        throw std::invalid_argument("emit: no records to write");
    }
    const std::string body = (format == EmitFormat::Csv) ? to_csv(records) : to_json(records);
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("emit: cannot open '" + path + "' for writing");
        }
        out << body;
        if (!out) {
            throw std::runtime_error("emit: write failed for '" + path + "'");
        }
    }
    const std::string manifest_path = path + ".manifest.json";
    std::ofstream manifest(manifest_path, std::ios::binary);
    if (!manifest) {
        throw std::runtime_error("emit: cannot open '" + manifest_path + "' for writing");
    }
    manifest << manifest_json(config, format, path, command);
    if (!manifest) {
        throw std::runtime_error("emit: write failed for '" + manifest_path + "'");
    }
}

std::vector<double> parse_grid(const std::string& text) {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream is(text);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':') {
        throw std::invalid_argument("parse_grid: expected \"lo:hi:step\", got \"" + text + "\"");
    }
    if (!(step > 0.0) || hi < lo) {
        throw std::invalid_argument("parse_grid: need step > 0 and hi >= lo");
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        grid.push_back(lo + static_cast<double>(k) * step);
    }
    return grid;
}

} // namespace qpurify
