#pragma once

#include <string>
#include <utility>

namespace sparsesum {

/// HARD bounds carry explicit constants and are asserted literally. MONITORED
/// bounds hold only up to a p^{o(1)} factor; their ratio is tracked against a
/// configurable ceiling.
enum class CheckKind { Hard, Monitored };

/// Direction of the comparison: most bounds are upper bounds (observed <=
/// bound); a few are lower bounds (observed >= bound).
enum class Relation { AtMost, AtLeast, StrictlyLess };

inline constexpr double kDefaultRatioCeiling = 4.0;

struct BoundCheck {
    std::string name;
    double observed = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    CheckKind kind = CheckKind::Hard;
    Relation relation = Relation::AtMost;
    bool passed = false;
    // Set when the check is vacuous or its hypotheses fail; passed stays true.
    bool skipped = false;
    std::string note;
};

inline const char* to_string(CheckKind kind) {
    return kind == CheckKind::Hard ? "HARD" : "MONITORED";
}

inline BoundCheck hard_check(std::string name, double observed, double bound,
                             Relation relation = Relation::AtMost) {
    BoundCheck c;
    c.name = std::move(name);
    c.observed = observed;
    c.bound = bound;
    c.ratio = bound != 0.0 ? observed / bound : 0.0;
    c.kind = CheckKind::Hard;
    c.relation = relation;
    switch (relation) {
        case Relation::AtMost: c.passed = observed <= bound; break;
        case Relation::AtLeast: c.passed = observed >= bound; break;
        case Relation::StrictlyLess: c.passed = observed < bound; break;
    }
    return c;
}

inline BoundCheck monitored_check(std::string name, double observed, double bound,
                                  double ceiling = kDefaultRatioCeiling) {
    BoundCheck c;
    c.name = std::move(name);
    c.observed = observed;
    c.bound = bound;
    c.ratio = bound != 0.0 ? observed / bound : 0.0;
    c.kind = CheckKind::Monitored;
    c.passed = c.ratio <= ceiling;
    return c;
}

inline BoundCheck skipped_check(std::string name, CheckKind kind, std::string reason) {
    BoundCheck c;
    c.name = std::move(name);
    c.kind = kind;
    c.passed = true;
    c.skipped = true;
    c.note = std::move(reason);
    return c;
}

}  // namespace sparsesum
