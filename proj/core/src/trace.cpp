#include "psirank/trace.hpp"

#include <string>

namespace psirank {

std::optional<UserId> resolve_origin(const TraceEvent& event, const PostIndex& index) {
  if (!event.is_repost()) return event.user;

  // A chain longer than the index must revisit some post.
  std::size_t hops = 0;
  std::int64_t current = event.repost_id;
  while (true) {
    if (current == event.post_id || hops > index.size()) {
      throw OriginCycleError("repost chain starting at post " + std::to_string(event.post_id) +
                                 " loops through post " + std::to_string(current),
                             current);
    }
    const PostIndex::Entry* entry = index.find(current);
    if (entry == nullptr) return std::nullopt;
    if (entry->repost_id == kOriginalPost) return entry->author;
    current = entry->repost_id;
    ++hops;
  }
}

}  // namespace psirank
