#include "pmusched/grid.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace pmusched {

int PowerNetwork::bus_index(int id) const {
  for (std::size_t i = 0; i < buses.size(); ++i)
    if (buses[i].id == id) return static_cast<int>(i);
  return -1;
}

namespace {

// matrix rows are separated by ';'; returns false on unreadable tokens
bool parse_rows(const std::string& text, std::vector<std::vector<double>>& out) {
  out.clear();
  std::string cleaned = text;
  if (auto pc = cleaned.find('%'); pc != std::string::npos) cleaned.resize(pc);
  std::string seg;
  std::istringstream segs(cleaned);
  while (std::getline(segs, seg, ';')) {
    for (char& ch : seg)
      if (ch == ',' || ch == '\t') ch = ' ';
    std::istringstream ss(seg);
    std::vector<double> row;
    double v;
    while (ss >> v) row.push_back(v);
    if (!ss.eof()) return false;
    if (!row.empty()) out.push_back(std::move(row));
  }
  return true;
}

}  // namespace

PowerNetwork parse_case(const std::string& text) {
  PowerNetwork net;
  bool have_bus = false, have_branch = false, have_base = false;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  enum class Block { None, Bus, Branch, Other } block = Block::None;

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = line.substr(0, line.find('%'));
    if (block == Block::None) {
      auto eq = stripped.find('=');
      if (eq == std::string::npos) continue;
      std::string lhs = stripped.substr(0, eq);
      auto dot = lhs.rfind('.');
      std::string name = dot == std::string::npos ? lhs : lhs.substr(dot + 1);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      std::string rhs = stripped.substr(eq + 1);
      if (name == "baseMVA") {
        std::istringstream ss(rhs);
        double v;
        char c;
        if (!(ss >> v)) throw MalformedCase(line_no, "cannot read baseMVA value");
        if (ss >> c && c != ';') throw MalformedCase(line_no, "cannot read baseMVA value");
        net.base_mva = v;
        have_base = true;
        continue;
      }
      if (rhs.find('[') == std::string::npos) continue;
      if (name == "bus")
        block = Block::Bus;
      else if (name == "branch")
        block = Block::Branch;
      else
        block = Block::Other;
      // data may start on the same line after '['
      stripped = stripped.substr(stripped.find('[') + 1);
    }

    bool closes = stripped.find(']') != std::string::npos;
    if (closes) stripped = stripped.substr(0, stripped.find(']'));

    if (block == Block::Bus || block == Block::Branch) {
      if (!parse_rows(stripped, rows)) throw MalformedCase(line_no, "unreadable matrix row");
      for (const auto& row : rows) {
        if (block == Block::Bus) {
          if (row.size() < 6) throw MalformedCase(line_no, "bus row needs at least 6 columns");
          Bus b;
          b.id = static_cast<int>(row[0]);
          b.gs = row[4];
          b.bs = row[5];
          net.buses.push_back(b);
        } else {
          if (row.size() < 4) throw MalformedCase(line_no, "branch row needs at least 4 columns");
          Branch br;
          br.from = static_cast<int>(row[0]);
          br.to = static_cast<int>(row[1]);
          br.r = row[2];
          br.x = row[3];
          br.b = row.size() > 4 ? row[4] : 0.0;
          br.ratio = row.size() > 8 ? row[8] : 0.0;
          br.shift_deg = row.size() > 9 ? row[9] : 0.0;
          br.status = row.size() > 10 ? static_cast<int>(row[10]) : 1;
          net.branches.push_back(br);
        }
      }
    }
    if (closes) {
      if (block == Block::Bus) have_bus = true;
      if (block == Block::Branch) have_branch = true;
      block = Block::None;
    }
  }

  if (!have_base) throw MalformedCase(line_no, "missing baseMVA");
  if (!have_bus || net.buses.empty()) throw MalformedCase(line_no, "missing bus block");
  if (!have_branch) throw MalformedCase(line_no, "missing branch block");

  std::unordered_map<int, int> seen;
  for (std::size_t i = 0; i < net.buses.size(); ++i) {
    if (!seen.emplace(net.buses[i].id, i).second)
      throw MalformedCase(line_no, "duplicate bus id " + std::to_string(net.buses[i].id));
  }
  for (const auto& br : net.branches) {
    if (!seen.count(br.from) || !seen.count(br.to)) throw DanglingBranch(br.from, br.to);
  }
  return net;
}

PowerNetwork load_case_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open case file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_case(ss.str());
}

AdmittanceMatrix build_admittance(const PowerNetwork& net) {
  const int n = static_cast<int>(net.buses.size());
  AdmittanceMatrix y(n);
  for (const auto& br : net.branches) {
    if (br.status != 1) continue;
    if (br.r == 0.0 && br.x == 0.0) throw ZeroImpedanceBranch(br.from, br.to);
    int f = net.bus_index(br.from);
    int t = net.bus_index(br.to);
    std::complex<double> ys = 1.0 / std::complex<double>(br.r, br.x);
    std::complex<double> ytt = ys + std::complex<double>(0, br.b / 2);
    double tau = br.ratio == 0.0 ? 1.0 : br.ratio;
    double theta = br.shift_deg * M_PI / 180.0;
    std::complex<double> tap = std::polar(tau, theta);
    y.at(f, f) += ytt / (tau * tau);
    y.at(t, t) += ytt;
    y.at(f, t) += -ys / std::conj(tap);
    y.at(t, f) += -ys / tap;
  }
  for (int i = 0; i < n; ++i)
    y.at(i, i) += std::complex<double>(net.buses[i].gs, net.buses[i].bs) / net.base_mva;
  return y;
}

}  // namespace pmusched
