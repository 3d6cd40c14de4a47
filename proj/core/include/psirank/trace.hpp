#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "psirank/error.hpp"
#include "psirank/types.hpp"

namespace psirank {

inline constexpr std::int64_t kOriginalPost = -1;

/// One line of a post/re-post trace: [PostID, TimeStamp, UserID, RePostID].
struct TraceEvent {
  std::int64_t post_id = 0;
  double timestamp = 0.0;
  UserId user = 0;
  std::int64_t repost_id = kOriginalPost;  // post that was re-shared, or -1

  bool is_repost() const noexcept { return repost_id != kOriginalPost; }
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Trace order: by timestamp, equal timestamps by ascending post id.
inline bool trace_order(const TraceEvent& a, const TraceEvent& b) {
  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
  return a.post_id < b.post_id;
}

class OriginCycleError : public InvalidInput {
 public:
  OriginCycleError(const std::string& what, std::int64_t post_id)
      : InvalidInput(what), post_id_(post_id) {}
  std::int64_t post_id() const noexcept { return post_id_; }

 private:
  std::int64_t post_id_;
};

/// post_id -> (author, repost_id) for every post seen so far.
class PostIndex {
 public:
  struct Entry {
    UserId author;
    std::int64_t repost_id;
  };

  void insert(std::int64_t post_id, UserId author, std::int64_t repost_id) {
    entries_.insert_or_assign(post_id, Entry{author, repost_id});
  }
  void insert(const TraceEvent& e) { insert(e.post_id, e.user, e.repost_id); }

  const Entry* find(std::int64_t post_id) const {
    auto it = entries_.find(post_id);
    return it == entries_.end() ? nullptr : &it->second;
  }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::int64_t, Entry> entries_;
};

/// Author of the original post behind `event`, following repost links
/// transitively. nullopt when a link points to a post missing from the index.
/// Throws OriginCycleError when the links loop.
std::optional<UserId> resolve_origin(const TraceEvent& event, const PostIndex& index);

}  // namespace psirank
