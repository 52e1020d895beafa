#include "morphprobe/utf8.hpp"

namespace morphprobe {

std::u32string utf8_decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        unsigned char b0 = static_cast<unsigned char>(s[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int extra;
        char32_t cp;
        if ((b0 & 0xE0) == 0xC0) {
            extra = 1;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            extra = 2;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            extra = 3;
            cp = b0 & 0x07;
        } else {
            out.push_back(b0);  // stray continuation or invalid lead byte
            ++i;
            continue;
        }
        if (i + static_cast<std::size_t>(extra) >= n) {
            // truncated sequence at end of input
            out.push_back(b0);
            ++i;
            continue;
        }
        bool ok = true;
        char32_t acc = cp;
        for (int k = 1; k <= extra; ++k) {
            unsigned char b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            acc = (acc << 6) | (b & 0x3F);
        }
        if (!ok) {
            out.push_back(b0);
            ++i;
            continue;
        }
        out.push_back(acc);
        i += static_cast<std::size_t>(extra) + 1;
    }
    return out;
}

std::string utf8_encode(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::size_t utf8_length(std::string_view s) {
    return utf8_decode(s).size();
}

static char32_t strip_one(char32_t c) {
    switch (c) {
        case U'á': return U'a';
        case U'é': return U'e';
        case U'í': return U'i';
        case U'ó': return U'o';
        case U'ú': return U'u';
        case U'ü': return U'u';
        case U'Á': return U'A';
        case U'É': return U'E';
        case U'Í': return U'I';
        case U'Ó': return U'O';
        case U'Ú': return U'U';
        case U'Ü': return U'U';
        default: return c;
    }
}

std::u32string strip_accents(std::u32string_view s) {
    std::u32string out(s);
    for (char32_t& c : out) c = strip_one(c);
    return out;
}

std::string strip_accents_utf8(std::string_view s) {
    return utf8_encode(strip_accents(utf8_decode(s)));
}

}  // namespace morphprobe
