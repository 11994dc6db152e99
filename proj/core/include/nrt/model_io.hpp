#pragma once

#include <string>
#include <vector>

#include "nrt/tree.hpp"

namespace nrt {

constexpr int kModelSchemaVersion = 1;

struct LoadedModel {
  NrtModel model;
  std::vector<std::string> feature_names;
  std::string response_name;
};

// Line-based model file. All reals are written as decimal text with 17
// significant digits, so a save/load round trip reproduces predictions
// bit for bit.
std::string model_to_string(const NrtModel& model,
                            const std::vector<std::string>& feature_names,
                            const std::string& response_name);
LoadedModel model_from_string(const std::string& text);

void save_model(const std::string& path, const NrtModel& model,
                const std::vector<std::string>& feature_names,
                const std::string& response_name);
LoadedModel load_model(const std::string& path);

}  // namespace nrt
