#ifndef HELMFIELD_METRICS_HPP
#define HELMFIELD_METRICS_HPP

#include "helmfield/field.hpp"

namespace helmfield {

struct Score {
  double nmse_db;  // -infinity when the estimate matches the truth exactly
  double ncc;      // in [0, 1]
};

/// 10 log10(||truth - estimate||^2 / ||truth||^2). Returns -infinity on an
/// exact match; throws if the truth field is identically zero.
double nmse_db(const PressureField& truth, const PressureField& estimate);

/// |estimate^H truth| / (||estimate|| ||truth||): magnitude cosine
/// similarity, in [0, 1] by Cauchy-Schwarz.
double ncc(const PressureField& truth, const PressureField& estimate);

/// Same numerator over squared norms. Not scale-invariant; kept only for
/// cross-checks behind the CLI's --ncc-literal flag.
double ncc_literal(const PressureField& truth, const PressureField& estimate);

Score score(const PressureField& truth, const PressureField& estimate);

}  // namespace helmfield

#endif
