#pragma once

// Multiway external merge sort: runs of the size of free memory, then merge
// passes of fan-in (free blocks - 1) until one run is left. Stable.

#include <algorithm>
#include <functional>
#include <queue>
#include <vector>

#include "emg/emio.hpp"

namespace emg::em {

struct SortInfo {
  std::uint64_t records = 0;
  std::uint64_t formation_capacity = 0;
  std::uint64_t fan_in = 0;
  std::uint64_t runs_formed = 0;
  std::uint64_t merge_passes = 0;
  std::vector<std::uint64_t> run_lengths;  // lengths of the formed runs
};

template <class T, class Less = std::less<T>>
Run<T> external_sort(const Run<T>& input, Less less = {}, SortInfo* info = nullptr) {
  SortInfo local;
  SortInfo& out = info ? *info : local;
  out = {};
  out.records = input.size();
  if (input.empty()) return input;

  Storage& storage = *input.storage();
  const auto block = storage.config().block;
  const auto free_blocks = storage.available() / block;
  if (free_blocks < 3) {
    throw MemoryBudgetError("external sort needs three free blocks, have " + std::to_string(free_blocks));
  }
  out.formation_capacity = free_blocks * block;
  out.fan_in = free_blocks - 1;

  std::vector<Run<T>> runs;
  {
    const auto capacity = std::min<std::uint64_t>(out.formation_capacity,
                                                   (input.size() + block - 1) / block * block);
    auto lease = storage.lease(capacity);
    std::vector<T> buffer;
    buffer.reserve(capacity);
    TransferCounter counter(storage.config().disks);

    auto emit_run = [&] {
      std::stable_sort(buffer.begin(), buffer.end(), less);
      RunWriter<T> writer(storage, unbuffered);
      for (std::uint64_t at = 0; at < buffer.size(); at += block) {
        const auto n = std::min<std::uint64_t>(block, buffer.size() - at);
        writer.push_block(std::span<const T>(buffer.data() + at, n));
      }
      out.run_lengths.push_back(buffer.size());
      runs.push_back(writer.finish());
      buffer.clear();
    };

    const auto blocks = input.block_count();
    for (std::uint64_t b = 0; b < blocks; ++b) {
      const auto n = input.records_in_block(b);
      const auto at = buffer.size();
      buffer.resize(at + n);
      input.fetch_block(b, std::span<T>(buffer.data() + at, n), counter.next());
      if (buffer.size() + block > capacity) emit_run();
    }
    if (!buffer.empty()) emit_run();
  }
  out.runs_formed = runs.size();

  struct Head {
    T record;
    std::size_t source;
  };
  auto after = [&](const Head& a, const Head& b) {
    if (less(b.record, a.record)) return true;
    if (less(a.record, b.record)) return false;
    return a.source > b.source;
  };

  while (runs.size() > 1) {
    const auto fan_in = std::max<std::uint64_t>(2, storage.available() / block - 1);
    std::vector<Run<T>> next;
    for (std::size_t first = 0; first < runs.size(); first += fan_in) {
      const auto last = std::min<std::size_t>(runs.size(), first + fan_in);
      if (last - first == 1) {
        next.push_back(runs[first]);
        continue;
      }
      std::vector<RunReader<T>> readers;
      readers.reserve(last - first);
      for (auto i = first; i < last; ++i) readers.emplace_back(runs[i]);
      RunWriter<T> writer(storage);
      std::priority_queue<Head, std::vector<Head>, decltype(after)> heap(after);
      for (std::size_t i = 0; i < readers.size(); ++i) {
        T r;
        if (readers[i].next(r)) heap.push({r, i});
      }
      while (!heap.empty()) {
        Head h = heap.top();
        heap.pop();
        writer.push(h.record);
        if (readers[h.source].next(h.record)) heap.push(h);
      }
      next.push_back(writer.finish());
    }
    runs = std::move(next);
    ++out.merge_passes;
  }
  return runs.front();
}

// Typed entry point for a handle whose record layout is only known at run time.
template <class T, class Less = std::less<T>>
Run<T> external_sort(const RawRun& input, Less less = {}, SortInfo* info = nullptr) {
  return external_sort(Run<T>(input), less, info);
}

/// Drops records equal to their predecessor. Input must be sorted.
template <class T, class Eq = std::equal_to<T>>
Run<T> unique_sorted(const Run<T>& input, Storage& storage, Eq eq = {}) {
  RunWriter<T> writer(storage);
  bool have = false;
  T prev{};
  for_each(input, [&](const T& r) {
    if (!have || !eq(prev, r)) writer.push(r);
    prev = r;
    have = true;
  });
  return writer.finish();
}

template <class T, class Less = std::less<T>, class Eq = std::equal_to<T>>
Run<T> sort_unique(const Run<T>& input, Storage& storage, Less less = {}, Eq eq = {}) {
  return unique_sorted(external_sort(input, less), storage, eq);
}

template <class T, class Less = std::less<T>>
bool is_sorted(const Run<T>& run, Less less = {}) {
  bool have = false;
  bool sorted = true;
  T prev{};
  for_each(run, [&](const T& r) {
    if (have && less(r, prev)) sorted = false;
    prev = r;
    have = true;
  });
  return sorted;
}

}  // namespace emg::em
