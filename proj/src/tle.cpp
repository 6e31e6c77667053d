#include "odo/tle.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "odo/error.hpp"

namespace odo {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string cols(const std::string& line, int first, int last) {
    // 1-indexed inclusive column range, matching the format definition
    return line.substr(first - 1, last - first + 1);
}

std::string col_range(int first, int last) {
    return "columns " + std::to_string(first) + "-" + std::to_string(last);
}

int parse_int_field(const std::string& line, int first, int last, const char* what) {
    std::string field = trim(cols(line, first, last));
    if (field.empty())
        throw Error(ErrorCode::FieldSyntax, std::string(what) + " empty (" + col_range(first, last) + ")");
    for (char c : field)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw Error(ErrorCode::FieldSyntax,
                        std::string(what) + " '" + field + "' (" + col_range(first, last) + ")");
    return std::atoi(field.c_str());
}

double parse_double_field(const std::string& line, int first, int last, const char* what) {
    std::string field = trim(cols(line, first, last));
    if (field.empty())
        throw Error(ErrorCode::FieldSyntax, std::string(what) + " empty (" + col_range(first, last) + ")");
    char* end = nullptr;
    double value = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size())
        throw Error(ErrorCode::FieldSyntax,
                    std::string(what) + " '" + field + "' (" + col_range(first, last) + ")");
    return value;
}

// "±MMMMM±E" with the decimal point and exponent base implied:
// " 34060-4" means 0.34060e-4
double parse_implied_exp(const std::string& line, int first, int last, const char* what) {
    std::string field = trim(cols(line, first, last));
    auto fail = [&]() -> Error {
        return Error(ErrorCode::FieldSyntax,
                     std::string(what) + " '" + field + "' (" + col_range(first, last) + ")");
    };
    if (field.empty()) throw fail();
    size_t i = 0;
    char sign = '+';
    if (field[i] == '+' || field[i] == '-') sign = field[i++];
    std::string mantissa;
    while (i < field.size() && std::isdigit(static_cast<unsigned char>(field[i])))
        mantissa += field[i++];
    if (mantissa.empty() || mantissa.size() > 5) throw fail();
    if (i + 2 != field.size()) throw fail();
    char exp_sign = field[i];
    if (exp_sign == ' ') exp_sign = '+'; // legacy blank exponent sign
    if (exp_sign != '+' && exp_sign != '-') throw fail();
    char exp_digit = field[i + 1];
    if (!std::isdigit(static_cast<unsigned char>(exp_digit))) throw fail();
    // rebuild as ordinary scientific notation so strtod does the rounding
    std::string text;
    text += sign;
    text += "0.";
    text += mantissa;
    text += 'e';
    text += exp_sign;
    text += exp_digit;
    return std::strtod(text.c_str(), nullptr);
}

void check_range(bool ok, const char* field) {
    if (!ok) throw Error(ErrorCode::RangeViolation, field);
}

std::string fmt_mean_motion_dot(double value) {
    long long scaled = std::llround(std::fabs(value) * 1e8);
    if (scaled > 99999999)
        throw Error(ErrorCode::UnrepresentableField, "mean_motion_dot magnitude must be below 1");
    char buf[12];
    std::snprintf(buf, sizeof buf, "%c.%08lld", value < 0 ? '-' : ' ', scaled);
    return buf;
}

std::string fmt_implied_exp(double value, const char* what) {
    if (value == 0.0) return " 00000-0";
    double mag = std::fabs(value);
    int exponent = 0;
    long long mantissa = std::llround(mag * 1e5);
    while (mantissa > 99999) {
        mag /= 10.0;
        ++exponent;
        mantissa = std::llround(mag * 1e5);
    }
    while (mantissa < 10000) {
        mag *= 10.0;
        --exponent;
        mantissa = std::llround(mag * 1e5);
    }
    if (exponent < -9 || exponent > 9)
        throw Error(ErrorCode::UnrepresentableField, std::string(what) + " exponent out of range");
    char buf[12];
    std::snprintf(buf, sizeof buf, "%c%05lld%c%d", value < 0 ? '-' : ' ', mantissa,
                  exponent < 0 ? '-' : '+', std::abs(exponent));
    return buf;
}

std::string fmt_fixed(double value, int width, int precision, const char* what) {
    char buf[24];
    int written = std::snprintf(buf, sizeof buf, "%*.*f", width, precision, value);
    if (written != width)
        throw Error(ErrorCode::UnrepresentableField,
                    std::string(what) + " does not fit in " + std::to_string(width) + " columns");
    return buf;
}

} // namespace

int full_epoch_year(int two_digit_year) {
    return two_digit_year >= 57 ? 1900 + two_digit_year : 2000 + two_digit_year;
}

int checksum(const std::string& line) {
    if (line.size() != 68 && line.size() != 69)
        throw Error(ErrorCode::BadLength,
                    "checksum input must be 68 or 69 columns, got " + std::to_string(line.size()));
    int sum = 0;
    for (size_t i = 0; i < 68; ++i) {
        char c = line[i];
        if (c >= '0' && c <= '9') sum += c - '0';
        else if (c == '-') sum += 1;
    }
    return sum % 10;
}

namespace {

void check_line(const std::string& line, int number) {
    if (line.size() != 69)
        throw Error(ErrorCode::BadLength, "line " + std::to_string(number) + " must be 69 columns, got " +
                                              std::to_string(line.size()));
    if (line[0] != '0' + number)
        throw Error(ErrorCode::BadLineNumber,
                    "line " + std::to_string(number) + " begins with '" + line.substr(0, 1) + "'");
    if (!std::isdigit(static_cast<unsigned char>(line[68])))
        throw Error(ErrorCode::FieldSyntax, "checksum (columns 69-69) is not a digit");
    int computed = checksum(line);
    int stored = line[68] - '0';
    if (computed != stored)
        throw Error(ErrorCode::ChecksumMismatch, "line " + std::to_string(number) + ": computed " +
                                                     std::to_string(computed) + ", column 69 has " +
                                                     std::to_string(stored));
}

} // namespace

TLERecord parse_tle(const std::string& line1, const std::string& line2) {
    check_line(line1, 1);
    check_line(line2, 2);

    TLERecord rec;
    rec.catalog_number = parse_int_field(line1, 3, 7, "catalog number");
    rec.classification = line1[7];
    rec.intl_designator = trim(cols(line1, 10, 17));
    rec.epoch_year = parse_int_field(line1, 19, 20, "epoch year");
    rec.epoch_day = parse_double_field(line1, 21, 32, "epoch day");
    rec.mean_motion_dot = parse_double_field(line1, 34, 43, "mean motion derivative");
    rec.mean_motion_ddot = parse_implied_exp(line1, 45, 52, "mean motion second derivative");
    rec.bstar = parse_implied_exp(line1, 54, 61, "bstar");
    {
        char eph = line1[62];
        if (eph == ' ') eph = '0';
        if (!std::isdigit(static_cast<unsigned char>(eph)))
            throw Error(ErrorCode::FieldSyntax, "ephemeris type (columns 63-63)");
        rec.ephemeris_type = eph - '0';
    }
    rec.element_set_number = parse_int_field(line1, 65, 68, "element set number");
    rec.checksum1 = line1[68] - '0';

    int catalog2 = parse_int_field(line2, 3, 7, "catalog number");
    rec.inclination = parse_double_field(line2, 9, 16, "inclination");
    rec.raan = parse_double_field(line2, 18, 25, "raan");
    {
        std::string field = cols(line2, 27, 33);
        for (char c : field)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw Error(ErrorCode::FieldSyntax,
                            "eccentricity '" + field + "' (" + col_range(27, 33) + ")");
        rec.eccentricity = std::strtod(("0." + field).c_str(), nullptr);
    }
    rec.arg_perigee = parse_double_field(line2, 35, 42, "argument of perigee");
    rec.mean_anomaly = parse_double_field(line2, 44, 51, "mean anomaly");
    rec.mean_motion = parse_double_field(line2, 53, 63, "mean motion");
    rec.rev_number = parse_int_field(line2, 64, 68, "revolution number");
    rec.checksum2 = line2[68] - '0';

    if (rec.catalog_number != catalog2)
        throw Error(ErrorCode::CatalogNumberMismatch,
                    "line 1 has " + std::to_string(rec.catalog_number) + ", line 2 has " +
                        std::to_string(catalog2));

    check_range(rec.catalog_number >= 1 && rec.catalog_number <= 99999, "catalog_number");
    check_range(rec.inclination >= 0.0 && rec.inclination <= 180.0, "inclination");
    check_range(rec.raan >= 0.0 && rec.raan < 360.0, "raan");
    check_range(rec.eccentricity >= 0.0 && rec.eccentricity < 1.0, "eccentricity");
    check_range(rec.arg_perigee >= 0.0 && rec.arg_perigee < 360.0, "arg_perigee");
    check_range(rec.mean_anomaly >= 0.0 && rec.mean_anomaly < 360.0, "mean_anomaly");
    check_range(rec.mean_motion > 0.0, "mean_motion");
    return rec;
}

std::pair<std::string, std::string> serialize_tle(const TLERecord& rec) {
    if (rec.catalog_number < 1 || rec.catalog_number > 99999)
        throw Error(ErrorCode::UnrepresentableField, "catalog_number outside 1-99999");
    if (rec.intl_designator.size() > 8)
        throw Error(ErrorCode::UnrepresentableField, "intl_designator longer than 8 columns");
    if (rec.epoch_year < 0 || rec.epoch_year > 99)
        throw Error(ErrorCode::UnrepresentableField, "epoch_year must be two digits");
    if (rec.epoch_day < 0.0 || rec.epoch_day >= 1000.0)
        throw Error(ErrorCode::UnrepresentableField, "epoch_day does not fit DDD.DDDDDDDD");
    if (rec.ephemeris_type < 0 || rec.ephemeris_type > 9)
        throw Error(ErrorCode::UnrepresentableField, "ephemeris_type must be one digit");
    if (rec.element_set_number < 0 || rec.element_set_number > 9999)
        throw Error(ErrorCode::UnrepresentableField, "element_set_number outside 0-9999");
    if (rec.rev_number < 0 || rec.rev_number > 99999)
        throw Error(ErrorCode::UnrepresentableField, "rev_number outside 0-99999");
    if (rec.eccentricity < 0.0 || std::llround(rec.eccentricity * 1e7) > 9999999)
        throw Error(ErrorCode::UnrepresentableField, "eccentricity outside [0, 1)");

    char line1[80];
    std::snprintf(line1, sizeof line1, "1 %05d%c %-8s %02d%012.8f %s %s %s %d %4d",
                  rec.catalog_number, rec.classification, rec.intl_designator.c_str(),
                  rec.epoch_year, rec.epoch_day, fmt_mean_motion_dot(rec.mean_motion_dot).c_str(),
                  fmt_implied_exp(rec.mean_motion_ddot, "mean_motion_ddot").c_str(),
                  fmt_implied_exp(rec.bstar, "bstar").c_str(), rec.ephemeris_type,
                  rec.element_set_number);

    char line2[80];
    std::snprintf(line2, sizeof line2, "2 %05d %s %s %07lld %s %s %s%5d", rec.catalog_number,
                  fmt_fixed(rec.inclination, 8, 4, "inclination").c_str(),
                  fmt_fixed(rec.raan, 8, 4, "raan").c_str(), std::llround(rec.eccentricity * 1e7),
                  fmt_fixed(rec.arg_perigee, 8, 4, "arg_perigee").c_str(),
                  fmt_fixed(rec.mean_anomaly, 8, 4, "mean_anomaly").c_str(),
                  fmt_fixed(rec.mean_motion, 11, 8, "mean_motion").c_str(), rec.rev_number);

    std::string l1(line1), l2(line2);
    if (l1.size() != 68 || l2.size() != 68)
        throw Error(ErrorCode::UnrepresentableField, "assembled line has wrong width");
    l1 += static_cast<char>('0' + checksum(l1));
    l2 += static_cast<char>('0' + checksum(l2));
    return {l1, l2};
}

std::string epoch_to_iso(int full_year, double day_of_year) {
    static const int month_len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int day = static_cast<int>(day_of_year);
    long long micros = std::llround((day_of_year - day) * 86400.0 * 1e6);
    if (micros >= 86400000000LL) {
        micros -= 86400000000LL;
        ++day;
    }
    int year = full_year;
    auto year_days = [](int y) {
        return ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0) ? 366 : 365;
    };
    while (day > year_days(year)) {
        day -= year_days(year);
        ++year;
    }
    int month = 1;
    for (int i = 0; i < 12; ++i) {
        int len = month_len[i];
        if (i == 1 && year_days(year) == 366) len = 29;
        if (day <= len) {
            month = i + 1;
            break;
        }
        day -= len;
    }
    int seconds_of_day = static_cast<int>(micros / 1000000);
    int frac = static_cast<int>(micros % 1000000);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06dZ", year, month, day,
                  seconds_of_day / 3600, (seconds_of_day / 60) % 60, seconds_of_day % 60, frac);
    return buf;
}

std::string cospar_designator(const std::string& field) {
    std::string f = trim(field);
    if (f.size() < 6) return f;
    for (int i = 0; i < 5; ++i)
        if (!std::isdigit(static_cast<unsigned char>(f[i]))) return f;
    int yy = (f[0] - '0') * 10 + (f[1] - '0');
    return std::to_string(full_epoch_year(yy)) + "-" + f.substr(2);
}

OrbitalElements to_elements(const TLERecord& rec) {
    OrbitalElements el;
    el.epoch = TimeRef{epoch_to_iso(full_epoch_year(rec.epoch_year), rec.epoch_day)};
    el.inclination = rec.inclination;
    el.raan = rec.raan;
    el.eccentricity = rec.eccentricity;
    el.arg_perigee = rec.arg_perigee;
    el.mean_anomaly = rec.mean_anomaly;
    el.mean_motion = rec.mean_motion;
    const double n_rad = rec.mean_motion * 2.0 * kPi / 86400.0; // rad/s
    el.semi_major_axis = std::cbrt(kMuEarth / (n_rad * n_rad));
    el.perigee_altitude = el.semi_major_axis * (1.0 - rec.eccentricity) - kEarthRadiusKm;
    el.apogee_altitude = el.semi_major_axis * (1.0 + rec.eccentricity) - kEarthRadiusKm;
    return el;
}

std::string annotate_tle(KnowledgeBase& kb, const TLERecord& rec, const std::string& subject,
                         const std::string& source) {
    // the generated facts are internally consistent; strict domain checking
    // stays a contract on caller-authored assertions
    const bool strict = kb.strict_mode();
    kb.set_strict_mode(false);
    kb.ensure_individual(subject);

    // reuse an existing orbit; has_orbit is functional
    std::string orbit;
    QueryPattern existing;
    existing.subject = subject;
    existing.predicate = "has_orbit";
    auto orbit_facts = kb.query(existing);
    if (!orbit_facts.empty()) {
        orbit = orbit_facts.front()->object.symbol;
    } else {
        orbit = subject + "#orbit";
        kb.assert_instance(orbit, "Orbit", std::nullopt, source);
        kb.assert_relation("has_orbit", subject, Value::make_symbol(orbit), std::nullopt, source);
    }

    char elset[16];
    std::snprintf(elset, sizeof elset, "%d", rec.element_set_number);
    const std::string tle_id = subject + "#tle-" + elset;
    kb.assert_instance(tle_id, "Two-line Element Set", std::nullopt, source);
    kb.assert_relation("is_described_by", orbit, Value::make_symbol(tle_id), std::nullopt, source);

    const TimeRef epoch{epoch_to_iso(full_epoch_year(rec.epoch_year), rec.epoch_day)};
    struct Param {
        const char* slug;
        const char* category;
        double magnitude;
        const char* unit;
    };
    const Param params[] = {
        {"inclination", "Inclination", rec.inclination, "deg"},
        {"eccentricity", "Eccentricity", rec.eccentricity, "dimensionless"},
        {"raan", "Right Ascension of the Ascending Node", rec.raan, "deg"},
        {"arg-perigee", "Argument of Perigee", rec.arg_perigee, "deg"},
        {"mean-anomaly", "Mean Anomaly", rec.mean_anomaly, "deg"},
        {"mean-motion", "Mean Motion", rec.mean_motion, "rev/day"},
    };
    for (const Param& p : params) {
        const std::string pid = tle_id + "#" + p.slug;
        kb.assert_instance(pid, p.category, std::nullopt, source);
        kb.assert_relation("has_value", pid, Value::make_quantity(p.magnitude, p.unit),
                           std::nullopt, source);
        kb.assert_relation("has_orbital_parameter", orbit, Value::make_symbol(pid), epoch, source);
    }

    if (!rec.intl_designator.empty())
        kb.assert_relation("has_international_designator", subject,
                           Value::make_text(cospar_designator(rec.intl_designator)), std::nullopt,
                           source);
    kb.assert_relation("has_catalog_number", subject,
                       Value::make_text(std::to_string(rec.catalog_number)), std::nullopt, source);
    kb.set_strict_mode(strict);
    return orbit;
}

std::string subject_for_entry(const TleEntry& entry) {
    std::string name;
    for (char c : entry.name)
        if (c != ',' && c != '(' && c != ')' && c != '"') name += c;
    name = trim(name);
    if (is_valid_term_id(name)) return name;
    return "norad-" + std::to_string(entry.record.catalog_number);
}

std::vector<TleEntry> read_tle_stream(std::istream& in, bool strict,
                                      std::vector<TleDiagnostic>* diagnostics) {
    std::vector<TleEntry> entries;
    std::string raw;
    std::string pending_name;
    int lineno = 0;
    auto report = [&](int line, const std::string& message) {
        if (strict)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
        if (diagnostics) diagnostics->push_back({line, message});
    };
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (trim(raw).empty()) continue;
        if (raw.rfind("1 ", 0) == 0 && raw.size() >= 60) {
            std::string line1 = raw;
            int first_line = lineno;
            std::string line2;
            while (std::getline(in, line2)) {
                ++lineno;
                if (!line2.empty() && line2.back() == '\r') line2.pop_back();
                if (!trim(line2).empty()) break;
                line2.clear();
            }
            if (trim(line2).empty()) {
                report(first_line, "element line 1 without a following line 2");
                break;
            }
            try {
                TLERecord rec = parse_tle(line1, line2);
                entries.push_back({pending_name, rec});
            } catch (const Error& e) {
                report(first_line, e.what());
            }
            pending_name.clear();
        } else if (raw.rfind("2 ", 0) == 0 && raw.size() >= 60) {
            report(lineno, "element line 2 without a preceding line 1");
        } else {
            std::string name = trim(raw);
            if (name.size() > 24) {
                report(lineno, "name line longer than 24 characters");
                continue;
            }
            pending_name = name;
        }
    }
    return entries;
}

std::vector<TleEntry> read_tle_file(const std::string& path, bool strict,
                                    std::vector<TleDiagnostic>* diagnostics) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open TLE file '" + path + "'");
    return read_tle_stream(in, strict, diagnostics);
}

} // namespace odo
