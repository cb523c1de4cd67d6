// Harmonized System groupings and the country -> continent lookup.
#pragma once

#include <string>
#include <string_view>
#include <unordered_map>

namespace tradecf::hs {

// HS chapter (2-digit sector, 1..99) -> HS section (industry, 1..22).
inline int section_of_chapter(int chapter) {
    if (chapter >= 1 && chapter <= 5) return 1;    // live animals / animal products
    if (chapter >= 6 && chapter <= 14) return 2;   // vegetable products
    if (chapter == 15) return 3;                   // animal or vegetable fats / oils
    if (chapter >= 16 && chapter <= 24) return 4;  // prepared foodstuffs
    if (chapter >= 25 && chapter <= 27) return 5;  // mineral products
    if (chapter >= 28 && chapter <= 38) return 6;  // chemical industries
    if (chapter >= 39 && chapter <= 40) return 7;  // plastics, rubber
    if (chapter >= 41 && chapter <= 43) return 8;  // raw hides, skins and leather
    if (chapter >= 44 && chapter <= 46) return 9;  // wood
    if (chapter >= 47 && chapter <= 49) return 10; // paper
    if (chapter >= 50 && chapter <= 63) return 11; // textile
    if (chapter >= 64 && chapter <= 67) return 12; // footwear
    if (chapter >= 68 && chapter <= 70) return 13; // articles of stone, cement
    if (chapter == 71) return 14;                  // jewelries
    if (chapter >= 72 && chapter <= 83) return 15; // base metals
    if (chapter >= 84 && chapter <= 85) return 16; // machinery equipment
    if (chapter >= 86 && chapter <= 89) return 17; // vehicles
    if (chapter >= 90 && chapter <= 92) return 18; // precision instruments
    if (chapter == 93) return 19;                  // arms
    if (chapter >= 94 && chapter <= 96) return 20; // misc. manufactured articles
    if (chapter == 97) return 21;                  // works of art
    if (chapter >= 98 && chapter <= 99) return 22; // special classification provisions
    return 0;
}

inline std::string section_name(int section) {
    switch (section) {
        case 1: return "Live Animals/Animal Products";
        case 2: return "Vegetable Products";
        case 3: return "Animal or Vegetable Fats/Oils";
        case 4: return "Prepared Foodstuffs";
        case 5: return "Mineral Products";
        case 6: return "Products of Chemical Industries";
        case 7: return "Plastics, Rubber";
        case 8: return "Raw Hides, Skins and Leather";
        case 9: return "Wood";
        case 10: return "Paper";
        case 11: return "Textile";
        case 12: return "Footwear";
        case 13: return "Art. of Stone, Cement";
        case 14: return "Jewelries";
        case 15: return "Base Metals";
        case 16: return "Machinery Equipment";
        case 17: return "Vehicles";
        case 18: return "Precision Instruments";
        case 19: return "Arms";
        case 20: return "Misc. Manuf. Art.";
        case 21: return "Works of Art";
        case 22: return "Special Classification Provisions";
        default: return "Unknown";
    }
}

// ISO 3166-1 alpha-2 -> continent. Codes not listed map to "other".
inline std::string continent_of(std::string_view iso2) {
    static const std::unordered_map<std::string_view, std::string_view> table = {
        // Americas (south)
        {"AR", "south_america"}, {"BO", "south_america"}, {"BR", "south_america"},
        {"CL", "south_america"}, {"CO", "south_america"}, {"EC", "south_america"},
        {"GY", "south_america"}, {"PE", "south_america"}, {"PY", "south_america"},
        {"SR", "south_america"}, {"UY", "south_america"}, {"VE", "south_america"},
        // Americas (north, central, caribbean)
        {"US", "north_america"}, {"CA", "north_america"}, {"MX", "north_america"},
        {"GT", "north_america"}, {"HN", "north_america"}, {"SV", "north_america"},
        {"NI", "north_america"}, {"CR", "north_america"}, {"PA", "north_america"},
        {"CU", "north_america"}, {"DO", "north_america"}, {"HT", "north_america"},
        {"JM", "north_america"}, {"TT", "north_america"}, {"BS", "north_america"},
        {"BB", "north_america"}, {"BZ", "north_america"}, {"AW", "north_america"},
        {"CW", "north_america"}, {"PR", "north_america"},
        // Europe
        {"AT", "europe"}, {"BE", "europe"}, {"BG", "europe"}, {"CH", "europe"},
        {"CZ", "europe"}, {"DE", "europe"}, {"DK", "europe"}, {"EE", "europe"},
        {"ES", "europe"}, {"FI", "europe"}, {"FR", "europe"}, {"GB", "europe"},
        {"GR", "europe"}, {"HR", "europe"}, {"HU", "europe"}, {"IE", "europe"},
        {"IS", "europe"}, {"IT", "europe"}, {"LT", "europe"}, {"LU", "europe"},
        {"LV", "europe"}, {"NL", "europe"}, {"NO", "europe"}, {"PL", "europe"},
        {"PT", "europe"}, {"RO", "europe"}, {"RS", "europe"}, {"RU", "europe"},
        {"SE", "europe"}, {"SI", "europe"}, {"SK", "europe"}, {"UA", "europe"},
        // Asia & middle east
        {"AE", "asia"}, {"BD", "asia"}, {"CN", "asia"}, {"HK", "asia"},
        {"ID", "asia"}, {"IL", "asia"}, {"IN", "asia"}, {"IQ", "asia"},
        {"IR", "asia"}, {"JO", "asia"}, {"JP", "asia"}, {"KR", "asia"},
        {"KW", "asia"}, {"LB", "asia"}, {"LK", "asia"}, {"MY", "asia"},
        {"PH", "asia"}, {"PK", "asia"}, {"QA", "asia"}, {"SA", "asia"},
        {"SG", "asia"}, {"TH", "asia"}, {"TR", "asia"}, {"TW", "asia"},
        {"VN", "asia"},
        // Africa
        {"DZ", "africa"}, {"EG", "africa"}, {"GH", "africa"}, {"KE", "africa"},
        {"MA", "africa"}, {"NG", "africa"}, {"SN", "africa"}, {"TN", "africa"},
        {"TZ", "africa"}, {"ZA", "africa"},
        // Oceania
        {"AU", "oceania"}, {"FJ", "oceania"}, {"NZ", "oceania"}, {"PG", "oceania"},
    };
    auto it = table.find(iso2);
    return it == table.end() ? "other" : std::string(it->second);
}

}  // namespace tradecf::hs
