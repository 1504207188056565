#pragma once

#include <stdexcept>
#include <string>

namespace twistsel {

// Input fails the hypotheses a routine needs (wrong congruence class,
// non-coprime twist, missing quadratic-residue condition, ...).
class hypothesis_violation : public std::runtime_error {
  public:
    explicit hypothesis_violation(const std::string& what) : std::runtime_error(what) {}
};

// The two classification routes disagree. This restates a theorem, so a
// throw always means an implementation bug; it is never swallowed.
class equivalence_violation : public std::logic_error {
  public:
    explicit equivalence_violation(const std::string& what) : std::logic_error(what) {}
};

// A torsion point of order 3 or 4 was found on a twist. Impossible for
// valid curve parameters; signals corrupted inputs or a bug.
class torsion_anomaly : public std::logic_error {
  public:
    explicit torsion_anomaly(const std::string& what) : std::logic_error(what) {}
};

// rank A outside {k-2, k-1} while the 4-rank is 1.
class rank_anomaly : public std::logic_error {
  public:
    explicit rank_anomaly(const std::string& what) : std::logic_error(what) {}
};

// No norm-equation solution within the search bound.
class norm_equation_not_found : public std::runtime_error {
  public:
    explicit norm_equation_not_found(const std::string& what) : std::runtime_error(what) {}
};

// (a, b) does not satisfy a^2 + b^2 = 2c^2 with the required coprimality.
class bad_curve_shape : public std::runtime_error {
  public:
    explicit bad_curve_shape(const std::string& what) : std::runtime_error(what) {}
};

// The base curve has 2-Selmer rank above two (Ker CM_1 nontrivial).
class not_selmer_minimal : public std::runtime_error {
  public:
    explicit not_selmer_minimal(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twistsel
