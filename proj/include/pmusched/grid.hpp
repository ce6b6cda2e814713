#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pmusched/errors.hpp"

namespace pmusched {

struct Bus {
  int id = 0;
  double gs = 0;  // shunt conductance, MW at 1 p.u.
  double bs = 0;  // shunt susceptance, MVAr at 1 p.u.
};

struct Branch {
  int from = 0;
  int to = 0;
  double r = 0;
  double x = 0;
  double b = 0;          // total line charging
  double ratio = 0;      // tap ratio; 0 means 1
  double shift_deg = 0;  // phase shift
  int status = 1;
};

struct PowerNetwork {
  double base_mva = 100;
  std::vector<Bus> buses;
  std::vector<Branch> branches;

  // index into buses for a bus id; -1 when absent
  int bus_index(int id) const;
};

// Parses the standard case-file layout: matrix blocks for bus, branch and a
// scalar baseMVA. Unrecognized columns and blocks are ignored. Throws
// MalformedCase (with line number) or DanglingBranch.
PowerNetwork parse_case(const std::string& text);
PowerNetwork load_case_file(const std::string& path);

// Dense complex nodal admittance matrix, ordered like PowerNetwork::buses.
class AdmittanceMatrix {
 public:
  AdmittanceMatrix() = default;
  explicit AdmittanceMatrix(int n) : n_(n), y_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  std::complex<double>& at(int i, int j) { return y_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::complex<double>& at(int i, int j) const {
    return y_[static_cast<std::size_t>(i) * n_ + j];
  }

 private:
  int n_ = 0;
  std::vector<std::complex<double>> y_;
};

// Standard pi-model construction with taps and phase shifts; bus shunts are
// added per unit on the diagonal. Throws ZeroImpedanceBranch for an
// in-service branch with r = x = 0.
AdmittanceMatrix build_admittance(const PowerNetwork& net);

}  // namespace pmusched
