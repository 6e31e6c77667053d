#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace odo {

// Registered unit table. Length units convert among each other; everything
// else compares by exact unit match.
enum class UnitFamily { Length, Mass, Angle, Frequency, Dimensionless };

bool is_known_unit(const std::string& unit);
UnitFamily unit_family(const std::string& unit);

/// Magnitude converted to the family base unit (m, kg, deg, rev/day, 1).
double normalized_magnitude(double magnitude, const std::string& unit);

struct Quantity {
    double magnitude = 0.0;
    std::string unit;
};

/// A time reference: an ISO-8601 UTC instant, or an opaque epoch token.
/// ISO instants compare temporally, tokens compare by exact text.
struct TimeRef {
    std::string text;

    bool is_iso() const;
    // total order used for "latest epoch" selection: ISO instants order
    // temporally and sort after opaque tokens; tokens order lexically
    bool operator==(const TimeRef& other) const;
    bool before(const TimeRef& other) const;
};

struct ParsedInstant {
    int64_t days;   // days since civil 1970-01-01
    int64_t micros; // microseconds within the day
};

std::optional<ParsedInstant> parse_iso_instant(const std::string& text);

enum class ValueKind { Symbol, Text, QuantityVal, Time };

/// Object slot of an assertion: an individual/category name, a quoted text
/// literal, a magnitude+unit pair, or a time reference.
struct Value {
    ValueKind kind = ValueKind::Symbol;
    std::string symbol;  // Symbol
    std::string text;    // Text
    Quantity quantity;   // QuantityVal
    TimeRef time;        // Time

    static Value make_symbol(std::string name);
    static Value make_text(std::string literal);
    static Value make_quantity(double magnitude, std::string unit);
    static Value make_time(std::string token);

    // logical equality: quantities compare by family + normalized magnitude,
    // times per TimeRef
    bool operator==(const Value& other) const;

    /// Stable identity key used for fact-set deduplication.
    std::string identity_key() const;

    /// Exchange-format rendering ("934 km", quoted text, bare symbol).
    std::string render() const;
};

} // namespace odo
