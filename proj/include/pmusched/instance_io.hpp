#pragma once

#include <string>

#include "pmusched/instance.hpp"

namespace pmusched {

// Instance file format. Job indices are 1-based on disk:
//   {"n": 3, "p": [1,2,3], "w": [3,2,1], "prec": [[3,1]], "labels": ["a","b","c"]}
// "labels" is optional.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

Instance load_instance_file(const std::string& path);
void save_instance_file(const Instance& inst, const std::string& path);

}  // namespace pmusched
