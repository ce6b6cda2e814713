#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pmusched {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- instance / schedule errors ---

struct CyclicPrecedence : Error {
  explicit CyclicPrecedence(std::vector<int> witness)
      : Error("precedence graph contains a cycle"), cycle(std::move(witness)) {}
  std::vector<int> cycle;  // job indices along the witness cycle
};

struct NonPositiveProcTime : Error {
  explicit NonPositiveProcTime(int job)
      : Error("processing time of job " + std::to_string(job + 1) + " is not positive") {}
};

struct BadJobIndex : Error {
  explicit BadJobIndex(int idx)
      : Error("precedence pair references invalid job index " + std::to_string(idx)) {}
};

struct NotAPermutation : Error {
  NotAPermutation() : Error("order is not a permutation of the jobs") {}
};

struct HasPrecedence : Error {
  HasPrecedence() : Error("operation requires an instance without precedence constraints") {}
};

struct TooLarge : Error {
  explicit TooLarge(int n, int cap)
      : Error("instance with " + std::to_string(n) + " jobs exceeds cap of " + std::to_string(cap)) {}
};

// --- relaxation errors ---

struct BothInfinite : Error {
  BothInfinite(int n, int m)
      : Error("cost entries (" + std::to_string(n + 1) + "," + std::to_string(m + 1) +
              ") are both infinite; precedence relation is corrupt") {}
};

struct NonPositiveBeta : Error {
  NonPositiveBeta() : Error("cycle constraint multiplier would not be positive") {}
};

struct InfeasibleSchedule : Error {
  InfeasibleSchedule() : Error("schedule violates a precedence constraint") {}
};

struct NotTriangular : Error {
  NotTriangular() : Error("reduced cost matrix is not lower triangular under the given order") {}
};

// --- grid errors ---

struct MalformedCase : Error {
  MalformedCase(int line, const std::string& what)
      : Error("case file line " + std::to_string(line) + ": " + what), line_no(line) {}
  int line_no;
};

struct DanglingBranch : Error {
  DanglingBranch(int from, int to)
      : Error("branch " + std::to_string(from) + "-" + std::to_string(to) +
              " references a bus missing from the bus table") {}
};

struct ZeroImpedanceBranch : Error {
  ZeroImpedanceBranch(int from, int to)
      : Error("in-service branch " + std::to_string(from) + "-" + std::to_string(to) +
              " has zero series impedance") {}
};

struct NoConvergence : Error {
  explicit NoConvergence(double res)
      : Error("iteration cap reached, residual " + std::to_string(res)), residual(res) {}
  double residual;
};

}  // namespace pmusched
