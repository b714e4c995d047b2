#pragma once

// Size-class free lists for GMP limb storage. Exact arithmetic on small
// matrices allocates and frees millions of one- and two-limb buffers; keeping
// them in per-thread lists avoids most trips through malloc.
//
// Opt-in: call use_pooled_gmp_allocator() once at program start, before any
// GMP object exists. Blocks are never handed back to the system.

#include <gmp.h>

#include <cstdlib>
#include <cstring>
#include <new>

namespace heckext {

namespace detail {

struct GmpPool {
  static constexpr std::size_t kGrain = 8, kClasses = 16, kChunk = 1 << 16;  // pooled up to 128 bytes
  struct Node {
    Node* next;
  };
  Node* free_[kClasses] = {};
  char* chunk_ = nullptr;
  std::size_t left_ = 0;

  static std::size_t cls(std::size_t n) { return (n + kGrain - 1) / kGrain - 1; }

  void* take(std::size_t n) {
    if (n == 0 || n > kClasses * kGrain) return nullptr;
    const std::size_t c = cls(n);
    if (Node* p = free_[c]) {
      free_[c] = p->next;
      return p;
    }
    const std::size_t sz = (c + 1) * kGrain;
    if (left_ < sz) {
      chunk_ = static_cast<char*>(std::malloc(kChunk));
      if (!chunk_) throw std::bad_alloc();
      left_ = kChunk;
    }
    void* p = chunk_;
    chunk_ += sz;
    left_ -= sz;
    return p;
  }
  bool give(void* p, std::size_t n) {
    if (n == 0 || n > kClasses * kGrain) return false;
    Node* node = static_cast<Node*>(p);
    node->next = free_[cls(n)];
    free_[cls(n)] = node;
    return true;
  }
};

inline GmpPool& gmp_pool() {
  thread_local GmpPool pool;
  return pool;
}

inline void* pool_alloc(std::size_t n) {
  if (void* p = gmp_pool().take(n)) return p;
  void* p = std::malloc(n);
  if (!p) throw std::bad_alloc();
  return p;
}

inline void pool_free(void* p, std::size_t n) {
  if (!gmp_pool().give(p, n)) std::free(p);
}

inline void* pool_realloc(void* p, std::size_t old_n, std::size_t new_n) {
  const bool old_pooled = old_n > 0 && old_n <= GmpPool::kClasses * GmpPool::kGrain;
  const bool new_pooled = new_n > 0 && new_n <= GmpPool::kClasses * GmpPool::kGrain;
  if (!old_pooled && !new_pooled) {
    void* q = std::realloc(p, new_n);
    if (!q) throw std::bad_alloc();
    return q;
  }
  if (old_pooled && new_pooled && GmpPool::cls(old_n) == GmpPool::cls(new_n)) return p;
  void* q = pool_alloc(new_n);
  std::memcpy(q, p, old_n < new_n ? old_n : new_n);
  pool_free(p, old_n);
  return q;
}

}  // namespace detail

inline void use_pooled_gmp_allocator() {
  mp_set_memory_functions(detail::pool_alloc, detail::pool_realloc, detail::pool_free);
}

}  // namespace heckext
