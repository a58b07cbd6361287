#pragma once

#include <optional>
#include <string_view>

namespace listfair {

enum class Gender : unsigned char { female, male };

/// "F"/"M" in either case; anything else yields nullopt.
[[nodiscard]] std::optional<Gender> parse_gender(std::string_view text) noexcept;

/// Upper-case letter used in every emitted file.
[[nodiscard]] constexpr char gender_letter(Gender g) noexcept {
    return g == Gender::female ? 'F' : 'M';
}

[[nodiscard]] constexpr bool is_female(Gender g) noexcept { return g == Gender::female; }

}  // namespace listfair
