#pragma once

#include <string>

#include "lagcut/smip/instance.hpp"

namespace lagcut::lab {

/// JSON text of an instance. Doubles use shortest round-trip formatting, so
/// from_json(to_json(inst)) == inst.
std::string to_json(const smip::SmipInstance& inst);

/// Parses and normalizes (<= and = second-stage rows become >= rows). Throws
/// Error naming the offending field or the parse position; probabilities and
/// dimensions are left for validate_instance.
smip::SmipInstance from_json(const std::string& text);

void save(const smip::SmipInstance& inst, const std::string& path);
smip::SmipInstance load(const std::string& path);

}  // namespace lagcut::lab
