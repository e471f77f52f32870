#pragma once

#include "qpurify/channel.hpp"
#include "qpurify/optics.hpp"
#include "qpurify/purify.hpp"
#include "qpurify/qubit.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qpurify {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Gain estimates are suppressed when the measured input mixedness falls below
// this: eta_hat is a ratio of estimates and blows up as xi -> 0.
inline constexpr double kMinXiForGain = 0.02;

enum class EmitFormat { Csv, Json };

struct RunConfig {
    NamedState state = NamedState::h();
    std::vector<double> xi_grid;  // symmetric points, zeta = kappa = xi
    std::optional<std::pair<double, double>> zeta_kappa;  // one asymmetric point instead
    std::int64_t trials = 100000;
    std::int64_t counts_per_setting = 10000;
    BeamSplitterSpec bs{};  // bs.overlap is the interference-arm setting
    double frequency = ChannelPair::kDefaultFrequency;
    double frequency_ratio = ChannelPair::kDefaultFrequencyRatio;
    std::uint64_t seed = 0;
};

// One sweep row. Ideal columns always satisfy eta * p == 1; simulated columns
// are absent in ideal mode, and eta_hat is additionally absent below the
// kMinXiForGain threshold.
struct RunRecord {
    std::string state_label;
    double xi;
    double xi_p_ideal;
    double eta_ideal;
    double p_ideal;
    std::optional<double> xi_hat;
    std::optional<double> se_xi_hat;
    std::optional<double> xi_p_hat;
    std::optional<double> se_xi_p_hat;
    std::optional<double> eta_hat;
    std::optional<double> se_eta_hat;
    std::optional<double> p_hat;
    std::uint64_t seed;
};

// Closed-form columns for an input pair with mixedness factors (zeta, kappa).
struct IdealPoint {
    double xi;
    double xi_p;
    double eta;
    double p;
};
IdealPoint ideal_point(double zeta, double kappa);

// Closed-form sweep; simulated columns stay empty.
std::vector<RunRecord> run_ideal(const RunConfig& config);

// Full pipeline per grid point: duty-cycle Monte Carlo channels, two-photon
// beam-splitter interference, bunched post-selection on k_1, and tomography of
// the k_1 single-photon state with the interference on (overlap as configured)
// and off (overlap 0). The off arm estimates xi, the on arm xi_p; the two
// arms share detection randomness so their ratio eta_hat = xi_p_hat / xi_hat
// isolates the interference effect, and the reported standard error accounts
// for that pairing. p_hat is (bunched rate on) / (bunched rate off) / 2, the
// off-arm rate being the interference-free reference.
std::vector<RunRecord> run_endtoend(const RunConfig& config);

// Frozen text formats: '.' decimal separator, LF line endings, %.12g numbers,
// empty fields for absent values. Column order matches RunRecord.
std::string csv_header();
std::string to_csv(const std::vector<RunRecord>& records);
std::string to_json(const std::vector<RunRecord>& records);

// Writes the data file plus a "<path>.manifest.json" sidecar recording the
// full config, seed and artifact version, so a rerun reproduces the file
// byte for byte.
void emit(const std::vector<RunRecord>& records, EmitFormat format, const std::string& path,
          const RunConfig& config, const std::string& command);

std::string manifest_json(const RunConfig& config, EmitFormat format, const std::string& path,
                          const std::string& command);

// Parses "lo:hi:step" (inclusive endpoints) into a grid.
std::vector<double> parse_grid(const std::string& text);

// The frozen number format used by the CSV writer.
std::string format_double(double value);

} // namespace qpurify
