#include "flowguard/dictionary.hpp"

namespace flowguard {

ActionDictionary::ActionDictionary(Level level, std::set<std::string> members)
    : level_(level), members_(std::move(members))
{
    for (const auto& m : members_)
        validate_token(m);
}

} // namespace flowguard
