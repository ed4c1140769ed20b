#pragma once

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "cnetsched/protocol/messages.hpp"

namespace cnetsched {

/// Yellow pages: capability name -> agent ids. Safe to use from several threads.
class Directory {
public:
    static constexpr const char* kBuffer = "buffer";
    static constexpr const char* kTransport = "transport";

    void register_agent(const std::string& capability, const AgentId& id);
    void deregister_agent(const AgentId& id);
    /// Sorted ids currently offering `capability`.
    std::vector<AgentId> search(const std::string& capability) const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::set<AgentId>> entries_;
};

}  // namespace cnetsched
