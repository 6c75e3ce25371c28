#include "memestream/interner.hpp"

#include <cassert>

namespace memestream {

std::uint32_t Interner::intern(std::string_view s) {
    if (auto it = index_.find(std::string(s)); it != index_.end()) {
        ++slots_[it->second].refs;
        return it->second;
    }
    std::uint32_t id;
    if (!free_.empty()) {
        id = free_.back();
        free_.pop_back();
        slots_[id].text.assign(s);
        slots_[id].refs = 1;
    } else {
        id = static_cast<std::uint32_t>(slots_.size());
        slots_.push_back(Slot{std::string(s), 1});
    }
    index_.emplace(std::string(s), id);
    return id;
}

void Interner::retain(std::uint32_t id) {
    assert(id < slots_.size() && slots_[id].refs > 0);
    ++slots_[id].refs;
}

void Interner::release(std::uint32_t id) {
    assert(id < slots_.size() && slots_[id].refs > 0);
    if (--slots_[id].refs == 0) {
        index_.erase(slots_[id].text);
        slots_[id].text.clear();
        slots_[id].text.shrink_to_fit();
        free_.push_back(id);
    }
}

std::optional<std::uint32_t> Interner::find(std::string_view s) const {
    auto it = index_.find(std::string(s));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string_view Interner::str(std::uint32_t id) const {
    assert(id < slots_.size() && slots_[id].refs > 0);
    return slots_[id].text;
}

}  // namespace memestream
