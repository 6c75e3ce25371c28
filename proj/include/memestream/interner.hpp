#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace memestream {

// Refcounted string <-> u32 id table. Slots whose refcount drops to zero are
// recycled through a free list, so the table's live size tracks whatever the
// window currently references instead of the whole stream's vocabulary.
// Id assignment is deterministic for a given call sequence.
class Interner {
public:
    // Find-or-create; the returned id carries one reference owned by the caller.
    std::uint32_t intern(std::string_view s);
    void retain(std::uint32_t id);
    void release(std::uint32_t id);

    // Lookup without creating or touching refcounts.
    std::optional<std::uint32_t> find(std::string_view s) const;

    std::string_view str(std::uint32_t id) const;

    std::size_t live() const { return index_.size(); }
    std::size_t slots() const { return slots_.size(); }

private:
    struct Slot {
        std::string text;
        std::uint32_t refs = 0;
    };
    std::vector<Slot> slots_;
    std::vector<std::uint32_t> free_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace memestream
