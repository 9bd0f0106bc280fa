#include "eonsim/slot_bitmap.hpp"

#include <algorithm>
#include <bit>

namespace eonsim {

namespace {

constexpr std::uint64_t kAllOnes = ~std::uint64_t{0};

}  // namespace

SlotBitmap::SlotBitmap(std::size_t size, bool free)
    : size_(size), words_(word_count(size), free ? kAllOnes : 0) {
  if (free && size_ % kWordBits != 0 && !words_.empty()) {
    words_.back() = kAllOnes >> (kWordBits - size_ % kWordBits);
  }
}

SlotBitmap SlotBitmap::parse(std::string_view bits) {
  SlotBitmap b(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      b.set(i, true);
    } else if (bits[i] != '0') {
      throw invariant_violation("bitmap text must contain only '0'/'1'");
    }
  }
  return b;
}

bool SlotBitmap::test(std::size_t index) const {
  if (index >= size_) {
    throw invariant_violation("slot index out of range");
  }
  return (words_[index / kWordBits] >> (index % kWordBits)) & 1;
}

void SlotBitmap::set(std::size_t index, bool free) {
  if (index >= size_) {
    throw invariant_violation("slot index out of range");
  }
  const std::uint64_t mask = std::uint64_t{1} << (index % kWordBits);
  if (free) {
    words_[index / kWordBits] |= mask;
  } else {
    words_[index / kWordBits] &= ~mask;
  }
}

std::size_t SlotBitmap::count_free() const {
  std::size_t total = 0;
  for (std::uint64_t word : words_) {
    total += static_cast<std::size_t>(std::popcount(word));
  }
  return total;
}

bool SlotBitmap::any_free() const {
  return std::any_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w != 0; });
}

template <typename Visit>
void SlotBitmap::for_each_run(Visit&& visit) const {
  bool in_run = false;
  std::size_t run_start = 0;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    const std::uint64_t word = words_[wi];
    const std::size_t base = wi * kWordBits;
    if (word == 0) {
      if (in_run) {
        if (!visit(run_start, base - run_start)) return;
        in_run = false;
      }
      continue;
    }
    if (word == kAllOnes) {
      if (!in_run) {
        in_run = true;
        run_start = base;
      }
      continue;
    }
    std::size_t bit = 0;
    while (bit < kWordBits) {
      const std::uint64_t rest = word >> bit;
      if (rest == 0) {
        if (in_run) {
          if (!visit(run_start, base + bit - run_start)) return;
          in_run = false;
        }
        break;
      }
      if (rest & 1) {
        const auto ones = static_cast<std::size_t>(std::countr_one(rest));
        if (!in_run) {
          in_run = true;
          run_start = base + bit;
        }
        bit += ones;
      } else {
        const auto zeros = static_cast<std::size_t>(std::countr_zero(rest));
        if (in_run) {
          if (!visit(run_start, base + bit - run_start)) return;
          in_run = false;
        }
        bit += zeros;
      }
    }
  }
  if (in_run) {
    visit(run_start, words_.size() * kWordBits - run_start);
  }
}

std::size_t SlotBitmap::max_contiguous() const {
  std::size_t best = 0;
  for_each_run([&](std::size_t, std::size_t length) {
    best = std::max(best, length);
    return true;
  });
  return best;
}

bool SlotBitmap::is_feasible(std::size_t required) const {
  if (required == 0) return true;
  if (required > size_) return false;
  bool found = false;
  for_each_run([&](std::size_t, std::size_t length) {
    if (length >= required) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

std::optional<SlotRange> SlotBitmap::first_fit(std::size_t required) const {
  if (required == 0) return SlotRange{0, 0};
  if (required > size_) return std::nullopt;
  std::optional<SlotRange> fit;
  for_each_run([&](std::size_t start, std::size_t length) {
    if (length >= required) {
      fit = SlotRange{start, required};
      return false;
    }
    return true;
  });
  return fit;
}

void SlotBitmap::check_range(const SlotRange& range) const {
  if (range.end() > size_ || range.end() < range.start) {
    throw invariant_violation("slot range exceeds bitmap size");
  }
}

bool SlotBitmap::range_free(const SlotRange& range) const {
  check_range(range);
  for (std::size_t i = range.start; i < range.end(); ++i) {
    if (!test(i)) return false;
  }
  return true;
}

bool SlotBitmap::range_occupied(const SlotRange& range) const {
  check_range(range);
  for (std::size_t i = range.start; i < range.end(); ++i) {
    if (test(i)) return false;
  }
  return true;
}

void SlotBitmap::occupy(const SlotRange& range) {
  check_range(range);
  if (!range_free(range)) {
    throw engine_violation("double allocation: slot already occupied in range");
  }
  for (std::size_t i = range.start; i < range.end(); ++i) {
    set(i, false);
  }
}

void SlotBitmap::release(const SlotRange& range) {
  check_range(range);
  if (!range_occupied(range)) {
    throw engine_violation("double release: slot already free in range");
  }
  for (std::size_t i = range.start; i < range.end(); ++i) {
    set(i, true);
  }
}

SlotBitmap SlotBitmap::zero_padded(std::size_t target_size) const {
  if (target_size < size_) {
    throw invariant_violation("zero padding cannot shrink a bitmap");
  }
  SlotBitmap padded(target_size);
  std::copy(words_.begin(), words_.end(), padded.words_.begin());
  return padded;
}

SlotBitmap& SlotBitmap::operator&=(const SlotBitmap& other) {
  if (size_ != other.size_) {
    throw invariant_violation("bitmap length mismatch: network not normalized");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= other.words_[i];
  }
  return *this;
}

std::string SlotBitmap::to_string() const {
  std::string text(size_, '0');
  for_each_run([&](std::size_t start, std::size_t length) {
    std::fill_n(text.begin() + static_cast<std::ptrdiff_t>(start), length, '1');
    return true;
  });
  return text;
}

}  // namespace eonsim
