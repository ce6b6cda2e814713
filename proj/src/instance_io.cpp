#include "pmusched/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pmusched {

using ordered_json = nlohmann::ordered_json;

Instance instance_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad instance file: ") + e.what());
  }
  Instance inst;
  try {
    inst.n = j.at("n").get<int>();
    inst.p = j.at("p").get<std::vector<Cost>>();
    inst.w = j.at("w").get<std::vector<Cost>>();
    for (const auto& pair : j.value("prec", ordered_json::array())) {
      inst.prec.emplace_back(pair.at(0).get<int>() - 1, pair.at(1).get<int>() - 1);
    }
    if (j.contains("labels")) inst.labels = j["labels"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad instance file: ") + e.what());
  }
  if (static_cast<int>(inst.p.size()) != inst.n || static_cast<int>(inst.w.size()) != inst.n)
    throw Error("bad instance file: p/w length does not match n");
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  ordered_json j;
  j["n"] = inst.n;
  j["p"] = inst.p;
  j["w"] = inst.w;
  auto prec = ordered_json::array();
  for (auto [i, k] : inst.prec) prec.push_back({i + 1, k + 1});
  j["prec"] = prec;
  if (!inst.labels.empty()) j["labels"] = inst.labels;
  return j.dump(2) + "\n";
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write instance file: " + path);
  out << instance_to_json(inst);
}

}  // namespace pmusched
