#pragma once

#include <string>
#include <vector>

namespace cobos {

/// Internal-state label beta = (n, l, S, j, m_j) of a hydrogenlike coboson.
/// S is the total spin of the two spin-1/2 constituents (0 or 1); j couples
/// l with S.
struct QuantumNumbers {
  int n = 1;
  int ell = 0;
  int S = 0;
  int j = 0;
  int m_j = 0;

  bool operator==(const QuantumNumbers&) const = default;
};

/// Empty string when beta satisfies every coupling rule; otherwise a
/// description of the first broken rule.
std::string validation_message(const QuantumNumbers& beta);

bool is_valid(const QuantumNumbers& beta);

/// Throws std::invalid_argument naming the broken rule.
void validate(const QuantumNumbers& beta);

/// All valid states with principal quantum number <= n_max, ordered by
/// (n, ell, S, j, m_j).
std::vector<QuantumNumbers> enumerate_states(int n_max);

std::string to_string(const QuantumNumbers& beta);

}  // namespace cobos
