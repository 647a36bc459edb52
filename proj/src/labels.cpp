#include "flowguard/labels.hpp"

#include <algorithm>
#include <cctype>

#include "flowguard/error.hpp"

namespace flowguard {

std::string_view to_string(Level level)
{
    switch (level) {
    case Level::Action: return "action";
    case Level::Verb: return "verb";
    case Level::Noun: return "noun";
    }
    return "action";
}

Level parse_level(std::string_view text)
{
    if (text == "action") return Level::Action;
    if (text == "verb") return Level::Verb;
    if (text == "noun") return Level::Noun;
    throw Error(ErrorCode::InvalidArgument,
                "unknown level '" + std::string(text) + "' (expected action, verb or noun)");
}

void validate_token(std::string_view text)
{
    if (text.empty())
        throw Error(ErrorCode::EmptyToken, "label token is empty");
    const bool bad = std::any_of(text.begin(), text.end(), [](unsigned char ch) {
        return ch == ',' || std::isspace(ch) != 0;
    });
    if (bad)
        throw Error(ErrorCode::InvalidLabel,
                    "label '" + std::string(text) + "' contains a comma or whitespace");
}

ActionLabel::ActionLabel(Level level, std::string text)
    : level_(level), text_(std::move(text))
{
    validate_token(text_);
    if (level_ == Level::Action && text_.find('_') == std::string::npos)
        throw Error(ErrorCode::InvalidLabel,
                    "action label '" + text_ + "' is not of the form verb_noun");
}

ActionLabel compose_action_label(std::string_view verb, std::string_view noun)
{
    if (verb.empty() || noun.empty())
        throw Error(ErrorCode::EmptyToken, "action label needs both a verb and a noun");
    validate_token(verb);
    validate_token(noun);
    std::string text;
    text.reserve(verb.size() + noun.size() + 1);
    text.append(verb).append("_").append(noun);
    return ActionLabel(Level::Action, std::move(text));
}

} // namespace flowguard
