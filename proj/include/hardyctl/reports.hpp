#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hardyctl/analysis.hpp"
#include "hardyctl/biortho.hpp"
#include "hardyctl/control.hpp"
#include "hardyctl/simulate.hpp"
#include "hardyctl/spectrum.hpp"

namespace hardyctl::reports {

// All floating-point output is serialized as decimal strings (full working
// precision for BigFloat fields, shortest round-trip form for doubles), so
// reports are byte-stable across platforms and reruns.

nlohmann::json spectrum_report(const spectrum::Spectrum& spec);
nlohmann::json family_report(const biortho::BiorthogonalFamily& family);
nlohmann::json control_report(const control::ControlProblem& problem,
                              const control::SynthesizedControl& ctl);
nlohmann::json simulate_report(const control::ControlProblem& problem,
                               const simulate::SimulationReport& report,
                               double crosscheck_deviation);
nlohmann::json cost_report(const analysis::CostTable& table);
nlohmann::json time_report(const analysis::TimeSweepResult& sweep);

std::string cost_csv(const analysis::CostTable& table);
std::string time_csv(const analysis::TimeSweepResult& sweep);
std::string samples_csv(const simulate::Samples& samples);
std::string transform_csv(const analysis::TransformResult& result);
std::string control_samples_csv(const control::SynthesizedControl& ctl, int n);

}  // namespace hardyctl::reports
