#pragma once

// Model and result serialization. All output is deterministic: fixed key
// order, fixed row order, shortest round-trip float formatting. JSON types
// stay out of the public interface on purpose.

#include <string>

#include "dss/modal.hpp"
#include "dss/model.hpp"

namespace dss {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

std::string model_to_json(const DssModel& model);
DssModel model_from_json(const std::string& text);

/// Throws FileNotFound / ParseError.
DssModel load_model(const std::string& path);
void save_model(const DssModel& model, const std::string& path);

std::string ss_to_json(const SsResult& ss);

/// CSV of all modes: mode_index,re_rad_s,im_rad_s[,freq_hz],class.
/// Virtual modes keep their row with empty numeric cells.
std::string modes_to_csv(const ModeSet& modes, bool with_hz);

/// CSV of one mode's participation: state,origin,ptilde_mag,ptilde_arg,
/// rows sorted by magnitude descending (the report's order).
std::string participation_to_csv(const ModeParticipation& mode);

} // namespace dss
