#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "odo/kb.hpp"

namespace odo {

// WGS-84 gravitational parameter and equatorial radius
inline constexpr double kMuEarth = 398600.4418; // km^3/s^2
inline constexpr double kEarthRadiusKm = 6378.137;

/// All fields of a NORAD Two-Line Element set. Parsing is strict about the
/// 69-column layout; serialization reproduces the canonical right-justified,
/// zero-padded form byte for byte.
struct TLERecord {
    // line 1
    int catalog_number = 0;
    char classification = 'U';
    std::string intl_designator; // cols 10-17, trimmed (e.g. "98067A")
    int epoch_year = 0;          // two digits as stored; see full_epoch_year()
    double epoch_day = 0.0;      // day of year with fraction
    double mean_motion_dot = 0.0;  // rev/day^2, halved as stored
    double mean_motion_ddot = 0.0; // rev/day^3, sixth as stored
    double bstar = 0.0;            // 1/earth radii
    int ephemeris_type = 0;
    int element_set_number = 0;
    int checksum1 = 0;
    // line 2
    double inclination = 0.0;  // deg, [0, 180]
    double raan = 0.0;         // deg, [0, 360)
    double eccentricity = 0.0; // [0, 1)
    double arg_perigee = 0.0;  // deg, [0, 360)
    double mean_anomaly = 0.0; // deg, [0, 360)
    double mean_motion = 0.0;  // rev/day, > 0
    int rev_number = 0;
    int checksum2 = 0;
};

/// Window rule for two-digit years: 57-99 map to 1957-1999, 00-56 to 2000-2056.
int full_epoch_year(int two_digit_year);

/// Mod-10 sum of digit characters over the first 68 columns, '-' counting 1.
/// Accepts a 68- or 69-character line.
int checksum(const std::string& line);

TLERecord parse_tle(const std::string& line1, const std::string& line2);
std::pair<std::string, std::string> serialize_tle(const TLERecord& rec);

struct OrbitalElements {
    TimeRef epoch; // ISO-8601 instant
    double inclination = 0.0;
    double raan = 0.0;
    double eccentricity = 0.0;
    double arg_perigee = 0.0;
    double mean_anomaly = 0.0;
    double mean_motion = 0.0;
    // derived via the two-body relation
    double semi_major_axis = 0.0;   // km
    double perigee_altitude = 0.0;  // km
    double apogee_altitude = 0.0;   // km
};

OrbitalElements to_elements(const TLERecord& rec);

/// ISO-8601 instant for a TLE epoch.
std::string epoch_to_iso(int full_year, double day_of_year);

/// COSPAR form of the line-1 designator field ("93036BLP" -> "1993-036BLP").
/// Falls back to the raw trimmed field when it does not follow the pattern.
std::string cospar_designator(const std::string& field);

/// Describes the record inside the knowledge base: the subject gets an orbit
/// individual (reused if one exists) described by a TLE individual keyed on
/// the element set number, six epoch-indexed parameter facts with quantity
/// values, and the identifier facts. Returns the orbit individual id.
std::string annotate_tle(KnowledgeBase& kb, const TLERecord& rec, const std::string& subject,
                         const std::string& source = "local");

struct TleEntry {
    std::string name; // optional preceding name line, trimmed
    TLERecord record;
};

struct TleDiagnostic {
    int line = 0;
    std::string message;
};

/// Subject id for an ingested entry: the name line with grammar-reserved
/// characters dropped, or "norad-<catalog number>" when no usable name exists.
std::string subject_for_entry(const TleEntry& entry);

/// Reads "[name] / line1 / line2" groups; blank lines ignored. Strict mode
/// throws on the first malformed pair, lenient mode skips it and records a
/// diagnostic.
std::vector<TleEntry> read_tle_stream(std::istream& in, bool strict,
                                      std::vector<TleDiagnostic>* diagnostics = nullptr);
std::vector<TleEntry> read_tle_file(const std::string& path, bool strict,
                                    std::vector<TleDiagnostic>* diagnostics = nullptr);

} // namespace odo
