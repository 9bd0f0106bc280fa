#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eonsim/errors.hpp"

namespace eonsim {

/// Contiguous block of spectrum slots [start, start + length).
struct SlotRange {
  std::size_t start = 0;
  std::size_t length = 0;

  std::size_t end() const { return start + length; }
  bool operator==(const SlotRange&) const = default;
};

/// Availability of the spectrum slots on one edge (or ANDed along a path).
///
/// Bit s is 1 when slot s is free and 0 when it is occupied or dead padding.
/// Index 0 is the lowest frequency. The debug text form lists index 0
/// leftmost, e.g. "00111001" has free slots {2,3,4,7}.
///
/// Bits are stored packed in 64-bit words; unused tail bits of the last
/// word are kept at 0.
class SlotBitmap {
 public:
  SlotBitmap() = default;

  /// All slots occupied, or all free when `free` is set.
  explicit SlotBitmap(std::size_t size, bool free = false);

  static SlotBitmap all_free(std::size_t size) { return SlotBitmap(size, true); }

  /// Parses the debug text form ('0'/'1' characters, index 0 first).
  static SlotBitmap parse(std::string_view bits);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool test(std::size_t index) const;
  void set(std::size_t index, bool free);

  /// Number of free slots.
  std::size_t count_free() const;

  bool any_free() const;

  /// Length of the longest run of consecutive free slots (0 when none).
  std::size_t max_contiguous() const;

  /// True when some run of at least `required` consecutive free slots exists.
  /// Equivalent to max_contiguous() >= required; required == 0 always fits.
  bool is_feasible(std::size_t required) const;

  /// Lowest-start run of exactly `required` free slots, or nullopt when the
  /// bitmap cannot host it. first_fit(0) trivially yields {0,0}.
  std::optional<SlotRange> first_fit(std::size_t required) const;

  /// True when every slot of `range` is free.
  bool range_free(const SlotRange& range) const;

  /// True when every slot of `range` is occupied.
  bool range_occupied(const SlotRange& range) const;

  /// Marks a fully free range occupied. Throws engine_violation when any
  /// slot in the range is already occupied (double allocation).
  void occupy(const SlotRange& range);

  /// Marks a fully occupied range free again. Throws engine_violation when
  /// any slot is already free (double release). Rejecting releases inside
  /// zero padding is the edge layer's job, which knows the real slot count.
  void release(const SlotRange& range);

  /// Returns a copy extended with permanently-unavailable slots at the
  /// high-index end so it reaches `target_size`. Throws invariant_violation
  /// when the target is shorter than the current size.
  SlotBitmap zero_padded(std::size_t target_size) const;

  /// Bitwise AND; throws invariant_violation on length mismatch (a mismatch
  /// means the network was never normalized).
  SlotBitmap& operator&=(const SlotBitmap& other);

  friend SlotBitmap intersect(SlotBitmap a, const SlotBitmap& b) {
    a &= b;
    return a;
  }

  std::string to_string() const;

  bool operator==(const SlotBitmap&) const = default;

 private:
  static constexpr std::size_t kWordBits = 64;

  static std::size_t word_count(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
  }

  void check_range(const SlotRange& range) const;

  // Calls visit(start, length) for every maximal run of free slots, in
  // ascending order; stops early when visit returns false.
  template <typename Visit>
  void for_each_run(Visit&& visit) const;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace eonsim
