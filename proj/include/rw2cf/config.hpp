// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_CONFIG_HPP
#define RW2CF_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "rw2cf/calendar.hpp"
#include "rw2cf/model.hpp"

namespace rw2cf {

/// Everything a pipeline run depends on. Every model-affecting choice lives
/// here; CLI flags may override out_dir and seed only.
struct RunConfig {
  std::string data_path;
  std::string outcome;
  ModelConfig model;
  CalendarMonth train_end;
  CalendarMonth horizon_end;
  SamplerSettings sampler;
  std::string out_dir = "out";
  std::vector<int> cv_years;             // empty = every year before train_end's
  bool cv_include_partial_years = true;

  void validate() const;
};

RunConfig run_config_from_json(const std::string& path);

}  // namespace rw2cf

#endif
