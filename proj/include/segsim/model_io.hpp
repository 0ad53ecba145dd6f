#pragma once

#include <map>
#include <string>

#include "segsim/crn.hpp"

namespace segsim {

/// Parses the line-oriented .crn format:
///
///   # comment
///   @model PP
///   @species Pred Prey
///   @init Pred=200 Prey=200
///   @time 200
///   @reaction eat: Pred + Prey -> 2 Pred @ 0.005
///
/// A reaction complex is `0` (empty) or `+`-separated `[<int> ]<species>`
/// terms. Species missing from @init start at 0. Throws ParseError with
/// line/column on syntax errors, ModelError on semantic ones.
CrnModel parse_model(const std::string& text);

/// Canonical text form: normalized whitespace, @init in species order with
/// zero entries omitted, shortest round-trip number formatting.
/// serialize(parse(serialize(m))) == serialize(m).
std::string serialize_model(const CrnModel& model);

CrnModel load_model_file(const std::string& path);

/// The benchmark models, keyed PP, VI, TS, RP, SWITCH.
const std::map<std::string, CrnModel>& builtin_models();

}  // namespace segsim
