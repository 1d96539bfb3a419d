#ifndef INTERPK_IO_HPP_
#define INTERPK_IO_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "interpk/couples.hpp"
#include "interpk/interp.hpp"
#include "interpk/lethargy.hpp"
#include "interpk/snum.hpp"
#include "interpk/verify.hpp"

namespace interpk::io {

// Keys keep insertion order so that reports are byte-stable.
using Json = nlohmann::ordered_json;

const char* version();

// Throws ConfigError with the parser position on malformed text.
Json parse(std::string_view text, const std::string& source);
Json read_file(const std::string& path);
// Two-space indented, trailing newline.
std::string dump(const Json& j);

// Finite numbers as numbers, the rest as "inf", "-inf" or "nan".
Json number(double v);

// --- readers --------------------------------------------------------------------
// Every reader rejects unknown keys and wrong types with a ConfigError whose
// message starts with the offending key path, e.g. "couple.norm0.p: ...".

class Fields {
 public:
  Fields(const Json& j, std::string path);

  bool has(const char* key) const;
  // Marks the key as consumed; throws when it is absent.
  const Json& at(const char* key);
  std::string key_path(const char* key) const;
  // Throws on the first key that was never consumed.
  void done() const;

  double number(const char* key, double fallback);
  double number(const char* key);
  int integer(const char* key, int fallback);
  std::uint64_t seed(const char* key, std::uint64_t fallback);
  bool boolean(const char* key, bool fallback);
  std::string string(const char* key, const std::string& fallback);
  std::vector<double> numbers(const char* key, std::vector<double> fallback);
  std::vector<double> numbers(const char* key);
  std::vector<int> integers(const char* key, std::vector<int> fallback);

 private:
  const Json& j_;
  std::string path_;
  std::vector<std::string> used_;
};

double as_number(const Json& j, const std::string& path);
int as_int(const Json& j, const std::string& path);

FiniteVector vector_from_json(const Json& j, const std::string& path);
WeightedNorm norm_from_json(const Json& j, const std::string& path);
// {"norm0", "norm1", "strategy", "oracle"?}. The strategy must fit the norms:
// exact_l1_linf needs unit l1/linf, weighted_sup_lp two sup norms,
// power_coordinatewise a common finite p.
Couple couple_from_json(const Json& j, const std::string& path);
OracleOptions oracle_from_json(const Json& j, const std::string& path,
                               OracleOptions fallback = {});
InterpParams params_from_json(const Json& j, const std::string& path);
DyadicWindow window_from_json(const Json& j, const std::string& path);
LatticeParam lattice_from_json(const Json& j, const std::string& path);
// Row-major array of rows.
MatrixOperator matrix_from_json(const Json& j, const std::string& path);
CoupleFamily family_from_json(const Json& j, const std::string& path);

// Check configs. The seed is read from "seed" when present; callers decide
// whether it is required.
MainlemaConfig mainlema_from_json(const Json& j);
SumIntersectionConfig sum_intersection_from_json(const Json& j);
ReiterationConfig reiteration_from_json(const Json& j);
KonigConfig konig_from_json(const Json& j);
DichotomyConfig dichotomy_from_json(const Json& j);
DistinctnessConfig distinctness_from_json(const Json& j);

// --- writers --------------------------------------------------------------------

Json to_json(const FiniteVector& x);
Json to_json(const WeightedNorm& norm);
// UnsupportedError for couples whose norms are not weighted lp norms.
Json to_json(const Couple& couple);
Json to_json(const OracleOptions& options);
Json to_json(const InterpParams& params);
Json to_json(const DyadicWindow& window);
Json to_json(const LatticeParam& lattice);
Json to_json(const MatrixOperator& op);
Json to_json(const CoupleFamily& family);
Json to_json(const ConditionReport& report);

Json to_json(const MainlemaConfig& c);
Json to_json(const SumIntersectionConfig& c);
Json to_json(const ReiterationConfig& c);
Json to_json(const KonigConfig& c);
Json to_json(const DichotomyConfig& c);
Json to_json(const DistinctnessConfig& c);

// {check, config, seed, min_ratio, max_ratio, pass, rule, sample_count,
// per_dim}; the trace goes to CSV.
Json report_json(const EquivReport& report, const Json& config);
Json report_json(const DichotomyReport& report);
Json report_json(const DistinctnessReport& report);

// --- CSV ---------------------------------------------------------------------------

// Shortest round-trip decimal, independent of locale.
std::string format_number(double v);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);
void write_profile_csv(std::ostream& out, const KProfile& profile);
void write_snumbers_csv(std::ostream& out, const SNumSeq& s);
// Long format: one row per (series, n) with columns
// p, q, n, s_n, summand, partial_sum, flag.
void write_witness_csv(std::ostream& out, const WitnessReport& report);
void write_lift_csv(std::ostream& out, const DecaySpec& spec,
                    const std::vector<double>& xi);
void write_strictness_csv(std::ostream& out,
                          const std::vector<StrictnessPoint>& points);

}  // namespace interpk::io

#endif  // INTERPK_IO_HPP_
