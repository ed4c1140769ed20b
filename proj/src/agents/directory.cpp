#include "cnetsched/agents/directory.hpp"

namespace cnetsched {

void Directory::register_agent(const std::string& capability, const AgentId& id) {
    std::lock_guard lock(mutex_);
    entries_[capability].insert(id);
}

void Directory::deregister_agent(const AgentId& id) {
    std::lock_guard lock(mutex_);
    for (auto& [cap, ids] : entries_) ids.erase(id);
}

std::vector<AgentId> Directory::search(const std::string& capability) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(capability);
    if (it == entries_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

}  // namespace cnetsched
