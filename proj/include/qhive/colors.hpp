/**
 * @file colors.hpp
 * Edge colors {0, 1, 3, m} and the face color rule.
 */
#pragma once

#include <array>
#include <stdexcept>

namespace qhive {

enum class Color : unsigned char { Zero = 0, One = 1, Three = 3, M = 4 };

inline constexpr std::array<Color, 4> kAllColors{Color::Zero, Color::One, Color::Three, Color::M};

inline char color_symbol(Color c) {
    switch (c) {
        case Color::Zero: return '0';
        case Color::One: return '1';
        case Color::Three: return '3';
        case Color::M: return 'm';
    }
    return '?';
}

inline Color color_from_symbol(char ch) {
    switch (ch) {
        case '0': return Color::Zero;
        case '1': return Color::One;
        case '3': return Color::Three;
        case 'm': return Color::M;
        default: throw std::invalid_argument(std::string("unknown color symbol '") + ch + "'");
    }
}

/// Clockwise color triples allowed around a face, up to rotation: 000, 111, 103, 01m.
inline bool face_colors_ok(Color a, Color b, Color c) {
    static constexpr std::array<std::array<Color, 3>, 4> base{{{Color::Zero, Color::Zero, Color::Zero},
                                                               {Color::One, Color::One, Color::One},
                                                               {Color::One, Color::Zero, Color::Three},
                                                               {Color::Zero, Color::One, Color::M}}};
    for (const auto& p : base)
        for (int k = 0; k < 3; ++k)
            if (p[k] == a && p[(k + 1) % 3] == b && p[(k + 2) % 3] == c) return true;
    return false;
}

/// The multiset {0, 1, m}.
inline bool is_zero_one_m(Color a, Color b, Color c) {
    int z = 0, o = 0, m = 0;
    for (Color x : {a, b, c}) {
        z += x == Color::Zero;
        o += x == Color::One;
        m += x == Color::M;
    }
    return z == 1 && o == 1 && m == 1;
}

}  // namespace qhive
