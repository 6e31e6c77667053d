#include "odo/value.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "odo/error.hpp"

namespace odo {

const char* error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidTerm: return "InvalidTerm";
    case ErrorCode::DuplicateTerm: return "DuplicateTerm";
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::UnknownDomain: return "UnknownDomain";
    case ErrorCode::UnknownRange: return "UnknownRange";
    case ErrorCode::InverseMismatch: return "InverseMismatch";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::UnknownPredicate: return "UnknownPredicate";
    case ErrorCode::UnknownIndividual: return "UnknownIndividual";
    case ErrorCode::RangeKindMismatch: return "RangeKindMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::BadLineNumber: return "BadLineNumber";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::FieldSyntax: return "FieldSyntax";
    case ErrorCode::CatalogNumberMismatch: return "CatalogNumberMismatch";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::UnrepresentableField: return "UnrepresentableField";
    case ErrorCode::SchemaConflict: return "SchemaConflict";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Error";
}

namespace {

struct UnitEntry {
    const char* name;
    UnitFamily family;
    double to_base; // factor into the family base unit
};

// base units: m (length), kg (mass), deg (angle), rev/day (frequency)
constexpr std::array<UnitEntry, 7> kUnits = {{
    {"km", UnitFamily::Length, 1000.0},
    {"m", UnitFamily::Length, 1.0},
    {"cm", UnitFamily::Length, 0.01},
    {"kg", UnitFamily::Mass, 1.0},
    {"deg", UnitFamily::Angle, 1.0},
    {"rev/day", UnitFamily::Frequency, 1.0},
    {"dimensionless", UnitFamily::Dimensionless, 1.0},
}};

const UnitEntry* find_unit(const std::string& unit) {
    for (const auto& entry : kUnits)
        if (unit == entry.name) return &entry;
    return nullptr;
}

bool nearly_equal(double a, double b) {
    double scale = std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
    return std::fabs(a - b) <= 1e-12 * scale;
}

} // namespace

bool is_known_unit(const std::string& unit) { return find_unit(unit) != nullptr; }

UnitFamily unit_family(const std::string& unit) {
    const UnitEntry* entry = find_unit(unit);
    if (!entry) throw Error(ErrorCode::RangeKindMismatch, "unknown unit '" + unit + "'");
    return entry->family;
}

double normalized_magnitude(double magnitude, const std::string& unit) {
    const UnitEntry* entry = find_unit(unit);
    if (!entry) throw Error(ErrorCode::RangeKindMismatch, "unknown unit '" + unit + "'");
    return magnitude * entry->to_base;
}

// ---------------------------------------------------------------------------
// ISO-8601 instants

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
    if (to > s.size()) return false;
    for (size_t i = from; i < to; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return to > from;
}

int num(const std::string& s, size_t from, size_t to) {
    int v = 0;
    for (size_t i = from; i < to; ++i) v = v * 10 + (s[i] - '0');
    return v;
}

// days since 1970-01-01 (Howard Hinnant's civil-days algorithm)
int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

bool valid_date(int y, int mo, int d) {
    static const int len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (mo < 1 || mo > 12 || d < 1) return false;
    int max = len[mo - 1];
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (mo == 2 && leap) max = 29;
    return d <= max;
}

} // namespace

std::optional<ParsedInstant> parse_iso_instant(const std::string& text) {
    // YYYY-MM-DDTHH:MM:SS[.frac][Z]
    if (text.size() < 19) return std::nullopt;
    if (!all_digits(text, 0, 4) || text[4] != '-' || !all_digits(text, 5, 7) || text[7] != '-' ||
        !all_digits(text, 8, 10) || text[10] != 'T' || !all_digits(text, 11, 13) ||
        text[13] != ':' || !all_digits(text, 14, 16) || text[16] != ':' || !all_digits(text, 17, 19))
        return std::nullopt;
    int year = num(text, 0, 4), month = num(text, 5, 7), day = num(text, 8, 10);
    int hh = num(text, 11, 13), mm = num(text, 14, 16), ss = num(text, 17, 19);
    if (!valid_date(year, month, day) || hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    size_t pos = 19;
    int64_t micros = 0;
    if (pos < text.size() && text[pos] == '.') {
        size_t start = ++pos;
        int64_t scale = 100000;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (scale > 0) micros += (text[pos] - '0') * scale;
            scale /= 10;
            ++pos;
        }
        if (pos == start) return std::nullopt;
    }
    if (pos < text.size() && text[pos] == 'Z') ++pos;
    if (pos != text.size()) return std::nullopt;
    ParsedInstant instant;
    instant.days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    instant.micros = ((static_cast<int64_t>(hh) * 60 + mm) * 60 + ss) * 1000000 + micros;
    return instant;
}

bool TimeRef::is_iso() const { return parse_iso_instant(text).has_value(); }

bool TimeRef::operator==(const TimeRef& other) const {
    auto a = parse_iso_instant(text);
    auto b = parse_iso_instant(other.text);
    if (a && b) return a->days == b->days && a->micros == b->micros;
    return text == other.text;
}

bool TimeRef::before(const TimeRef& other) const {
    auto a = parse_iso_instant(text);
    auto b = parse_iso_instant(other.text);
    if (a && b) {
        if (a->days != b->days) return a->days < b->days;
        return a->micros < b->micros;
    }
    if (a.has_value() != b.has_value()) return b.has_value(); // tokens sort before instants
    return text < other.text;
}

// ---------------------------------------------------------------------------
// Value

Value Value::make_symbol(std::string name) {
    Value v;
    v.kind = ValueKind::Symbol;
    v.symbol = std::move(name);
    return v;
}

Value Value::make_text(std::string literal) {
    Value v;
    v.kind = ValueKind::Text;
    v.text = std::move(literal);
    return v;
}

Value Value::make_quantity(double magnitude, std::string unit) {
    if (!is_known_unit(unit))
        throw Error(ErrorCode::RangeKindMismatch, "unknown unit '" + unit + "'");
    if (!std::isfinite(magnitude))
        throw Error(ErrorCode::RangeKindMismatch, "quantity magnitude must be finite");
    Value v;
    v.kind = ValueKind::QuantityVal;
    v.quantity = {magnitude, std::move(unit)};
    return v;
}

Value Value::make_time(std::string token) {
    Value v;
    v.kind = ValueKind::Time;
    v.time = {std::move(token)};
    return v;
}

bool Value::operator==(const Value& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
    case ValueKind::Symbol: return symbol == other.symbol;
    case ValueKind::Text: return text == other.text;
    case ValueKind::QuantityVal: {
        if (unit_family(quantity.unit) != unit_family(other.quantity.unit)) return false;
        return nearly_equal(normalized_magnitude(quantity.magnitude, quantity.unit),
                            normalized_magnitude(other.quantity.magnitude, other.quantity.unit));
    }
    case ValueKind::Time: return time == other.time;
    }
    return false;
}

std::string Value::identity_key() const {
    char buf[64];
    switch (kind) {
    case ValueKind::Symbol: return "s:" + symbol;
    case ValueKind::Text: return "t:" + text;
    case ValueKind::QuantityVal: {
        double normalized = normalized_magnitude(quantity.magnitude, quantity.unit);
        if (normalized == 0.0) normalized = 0.0; // collapse the sign of zero
        std::snprintf(buf, sizeof buf, "q:%d:%.17g", static_cast<int>(unit_family(quantity.unit)),
                      normalized);
        return buf;
    }
    case ValueKind::Time: {
        auto instant = parse_iso_instant(time.text);
        if (instant) {
            std::snprintf(buf, sizeof buf, "i:%lld:%lld", static_cast<long long>(instant->days),
                          static_cast<long long>(instant->micros));
            return buf;
        }
        return "k:" + time.text;
    }
    }
    return "";
}

std::string Value::render() const {
    switch (kind) {
    case ValueKind::Symbol: return symbol;
    case ValueKind::Text: return "\"" + text + "\"";
    case ValueKind::QuantityVal: {
        // shortest text that parses back to the identical double
        char buf[48];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, quantity.magnitude);
        (void)ec;
        return std::string(buf, end) + " " + quantity.unit;
    }
    case ValueKind::Time: return time.text;
    }
    return "";
}

} // namespace odo
