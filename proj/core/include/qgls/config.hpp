#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgls/function.hpp"
#include "qgls/psi.hpp"
#include "qgls/serialize.hpp"

namespace qgls::config {

/// Declarative fixed-point problem (closed map family; the persistence
/// format carries no user closures).
struct FixpointSpec {
  std::string space_kind = "squared_euclidean";  // or "lp_sampled"
  double p = 0.5;
  std::vector<double> piece_measures;
  std::optional<double> K;       // triangle-constant override
  std::optional<double> K_quad;  // chain-constant override
  std::string map_kind = "affine";  // x -> scale * x + offset
  double scale = 0.0;
  std::vector<double> offset;
  double alpha = 0.0;
  std::vector<double> x0;
  std::string mode = "triangle_squared";  // or "quadrilateral"
  double target_bound = 0.0;
  std::size_t max_iterations = 100;
};

struct TransferSpec {
  std::string operator_kind = "identity";  // identity | dilation | scaling
  double factor = 1.0;                     // dilation s or scaling w
  std::string theta_kind = "constant";     // constant | power_of_s | tabulated
  double theta_value = 1.0;                // c or s
  std::vector<double> theta_p_nodes, theta_values;
  std::vector<std::pair<std::string, FunctionRep>> corpus;
};

struct BoydSpec {
  std::vector<double> s_grid;
};

struct TailSpec {
  std::vector<double> u_grid;
  std::optional<double> c;                  // exponent-choice constant
  std::vector<double> log_x_grid;           // optimal-p estimate abscissae
};

struct FundamentalSpec {
  std::vector<double> delta_grid;
};

struct NaturalSpec {
  double a = 0.0;
  double b = 1.0;
  std::size_t grid_size = 65;
};

struct Document {
  std::optional<FunctionRep> function;
  std::optional<PsiFunction> psi;
  std::optional<FixpointSpec> fixpoint;
  std::optional<TransferSpec> transfer;
  std::optional<BoydSpec> boyd;
  std::optional<TailSpec> tail;
  std::optional<FundamentalSpec> fundamental;
  std::optional<NaturalSpec> natural;
};

/// Strict parse of a configuration document.  Unknown fields anywhere are
/// rejected with a field-path diagnostic (ConfigError).
Document parse_document(const std::string& text);

/// Re-parseable echo of the parsed configuration.
jout::Value echo_document(const Document& doc);

jout::Value function_to_json(const FunctionRep& f);
jout::Value psi_to_json(const PsiFunction& psi);

}  // namespace qgls::config
