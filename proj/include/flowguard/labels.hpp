#pragma once

#include <string>
#include <string_view>

namespace flowguard {

// Granularity of a label. Action labels are verb and noun joined by '_'.
enum class Level { Action, Verb, Noun };

std::string_view to_string(Level level);
Level parse_level(std::string_view text);

// Throws InvalidLabel unless `text` is a usable token: non-empty, no comma,
// no whitespace of any kind.
void validate_token(std::string_view text);

class ActionLabel {
public:
    ActionLabel(Level level, std::string text);

    Level level() const noexcept { return level_; }
    const std::string& text() const noexcept { return text_; }

    friend bool operator==(const ActionLabel&, const ActionLabel&) = default;
    friend auto operator<=>(const ActionLabel&, const ActionLabel&) = default;

private:
    Level level_;
    std::string text_;
};

ActionLabel compose_action_label(std::string_view verb, std::string_view noun);

} // namespace flowguard
