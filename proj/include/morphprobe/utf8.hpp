#ifndef MORPHPROBE_UTF8_HPP
#define MORPHPROBE_UTF8_HPP

#include <string>
#include <string_view>

namespace morphprobe {

// Lenient UTF-8 decoding: an invalid byte decodes to its own value so that
// decoding never fails and lengths stay deterministic.
std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);
std::size_t utf8_length(std::string_view s);

// Spanish accent stripping: accented vowels lose their accent, everything
// else (including n-tilde) is kept as is.
std::u32string strip_accents(std::u32string_view s);
std::string strip_accents_utf8(std::string_view s);

}  // namespace morphprobe

#endif
