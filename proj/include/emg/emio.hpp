#pragma once

// Simulated external-memory substrate.
//
// Data lives in runs: append-only sequences of fixed-width records stored in
// block-granular regions. Every block moved between a region and simulated
// memory goes through a stream that charges the owning Storage's IoStats.
// A stream moving k blocks charges ceil(k / D) I/Os, which models striping
// over D disks. Memory held by streams, sort buffers and pipeline state is
// leased from the Storage so a watermark can check it against M.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "emg/common.hpp"

namespace emg::em {

struct EmConfig {
  std::uint64_t memory = std::uint64_t{1} << 20;  // M, records
  std::uint64_t block = std::uint64_t{1} << 12;   // B, records per block
  std::uint64_t disks = 1;                        // D, accounting divisor
  // Throw MemoryBudgetError on a watermark breach instead of only counting it.
  bool strict_memory = true;
  // Empty: regions live in process memory. Otherwise one file per region.
  std::filesystem::path scratch_dir;

  void validate() const;
  std::uint64_t blocks_in_memory() const { return memory / block; }
};

struct IoStats {
  std::uint64_t blocks_read = 0;
  std::uint64_t blocks_written = 0;

  std::uint64_t total() const { return blocks_read + blocks_written; }
  friend IoStats operator-(const IoStats& a, const IoStats& b) {
    return {a.blocks_read - b.blocks_read, a.blocks_written - b.blocks_written};
  }
  friend bool operator==(const IoStats&, const IoStats&) = default;
};

// ceil(ceil(records / B) / D): the charge of one sequential pass.
std::uint64_t scan_cost(std::uint64_t records, const EmConfig& cfg);
// N / (D B)
double scan_units(double records, const EmConfig& cfg);
// N / (D B) * (1 + ceil(log_{M/B}(N / B))), the unit the sort bounds are fitted against.
double sort_units(double records, const EmConfig& cfg);

enum class IoDirection { read, write };

struct IoEvent {
  IoDirection direction;
  std::uint64_t region;
  std::uint64_t block;
  bool charged;  // false when the transfer rides along in a D-wide parallel I/O
};

class Region {
 public:
  virtual ~Region() = default;
  virtual void write_block(std::uint64_t index, std::span<const std::byte> bytes) = 0;
  virtual void read_block(std::uint64_t index, std::span<std::byte> out) const = 0;
};

class BlockDevice {
 public:
  virtual ~BlockDevice() = default;
  virtual std::unique_ptr<Region> create_region(std::uint64_t block_bytes) = 0;
};

std::unique_ptr<BlockDevice> make_memory_device();
std::unique_ptr<BlockDevice> make_file_device(const std::filesystem::path& dir);

class Storage;

/// RAII claim on simulated memory, in records.
class MemoryLease {
 public:
  MemoryLease() = default;
  MemoryLease(Storage* storage, std::uint64_t records);
  MemoryLease(MemoryLease&& other) noexcept;
  MemoryLease& operator=(MemoryLease&& other) noexcept;
  MemoryLease(const MemoryLease&) = delete;
  MemoryLease& operator=(const MemoryLease&) = delete;
  ~MemoryLease();

  void resize(std::uint64_t records);
  std::uint64_t records() const { return records_; }

 private:
  void release();

  Storage* storage_ = nullptr;
  std::uint64_t records_ = 0;
};

class Storage {
 public:
  explicit Storage(EmConfig cfg);
  Storage(EmConfig cfg, std::unique_ptr<BlockDevice> device);
  Storage(const Storage&) = delete;
  Storage& operator=(const Storage&) = delete;

  const EmConfig& config() const { return cfg_; }

  IoStats stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

  MemoryLease lease(std::uint64_t records) { return MemoryLease(this, records); }
  std::uint64_t resident() const { return resident_; }
  std::uint64_t available() const { return resident_ >= cfg_.memory ? 0 : cfg_.memory - resident_; }
  std::uint64_t peak_resident() const { return peak_; }
  std::uint64_t memory_violations() const { return violations_; }
  void reset_peak() { peak_ = resident_; }

  void set_observer(std::function<void(const IoEvent&)> observer) { observer_ = std::move(observer); }

  // Stream plumbing.
  std::shared_ptr<Region> create_region(std::uint64_t block_bytes, std::uint64_t* id);
  void record_transfer(IoDirection direction, std::uint64_t region, std::uint64_t block, bool charged);

 private:
  friend class MemoryLease;
  void acquire(std::uint64_t records);
  void release(std::uint64_t records) { resident_ -= records; }

  EmConfig cfg_;
  std::unique_ptr<BlockDevice> device_;
  IoStats stats_;
  std::uint64_t resident_ = 0;
  std::uint64_t peak_ = 0;
  std::uint64_t violations_ = 0;
  std::uint64_t next_region_ = 0;
  std::function<void(const IoEvent&)> observer_;
};

/// Counts block transfers of one stream; only every D-th one is charged.
class TransferCounter {
 public:
  explicit TransferCounter(std::uint64_t disks) : disks_(disks) {}
  bool next() { return blocks_++ % disks_ == 0; }

 private:
  std::uint64_t disks_;
  std::uint64_t blocks_ = 0;
};

/// Type-erased run handle.
struct RawRun {
  Storage* storage = nullptr;
  std::shared_ptr<Region> region;
  std::uint64_t region_id = 0;
  std::uint64_t size = 0;
  std::uint64_t width = 0;
};

template <class T>
class Run {
  static_assert(std::is_trivially_copyable_v<T>, "run records must be trivially copyable");

 public:
  Run() { raw_.width = sizeof(T); }
  explicit Run(RawRun raw) : raw_(std::move(raw)) {
    if (raw_.width != sizeof(T)) {
      throw ConfigError("record width " + std::to_string(raw_.width) + " does not match expected width " +
                        std::to_string(sizeof(T)));
    }
  }

  std::uint64_t size() const { return raw_.size; }
  bool empty() const { return raw_.size == 0; }
  std::uint64_t record_width() const { return sizeof(T); }
  Storage* storage() const { return raw_.storage; }
  const RawRun& raw() const { return raw_; }

  std::uint64_t block_records() const { return raw_.storage ? raw_.storage->config().block : 1; }
  std::uint64_t block_count() const {
    const auto b = block_records();
    return (raw_.size + b - 1) / b;
  }

  // Reads block `index` into `out` (sized to the records present) and reports it.
  void fetch_block(std::uint64_t index, std::span<T> out, bool charged) const {
    raw_.region->read_block(index, std::as_writable_bytes(out));
    raw_.storage->record_transfer(IoDirection::read, raw_.region_id, index, charged);
  }
  std::uint64_t records_in_block(std::uint64_t index) const {
    const auto b = block_records();
    return std::min<std::uint64_t>(b, raw_.size - index * b);
  }

 private:
  RawRun raw_;
};

struct unbuffered_t {
  explicit unbuffered_t() = default;
};
// Writer that only accepts whole blocks from memory its caller already leased.
inline constexpr unbuffered_t unbuffered{};

template <class T>
class RunWriter {
 public:
  explicit RunWriter(Storage& storage)
      : storage_(&storage),
        lease_(storage.lease(storage.config().block)),
        counter_(storage.config().disks) {
    init();
  }
  RunWriter(Storage& storage, unbuffered_t) : storage_(&storage), counter_(storage.config().disks) { init(); }

 private:
  void init() {
    raw_.storage = storage_;
    raw_.width = sizeof(T);
    raw_.region = storage_->create_region(storage_->config().block * sizeof(T), &raw_.region_id);
  }

 public:
  void push(const T& record) {
    if (lease_.records() == 0) throw PreconditionError("unbuffered writer accepts whole blocks only");
    if (sealed_) throw PreconditionError("append after a partial block");
    buffer_.push_back(record);
    ++raw_.size;
    if (buffer_.size() == storage_->config().block) flush();
  }

  // Writes a whole block straight from caller memory (run formation in sort).
  void push_block(std::span<const T> records) {
    if (!buffer_.empty() || sealed_) {
      for (const auto& r : records) push(r);
      return;
    }
    if (records.empty()) return;
    write(records);
    raw_.size += records.size();
    sealed_ = records.size() < storage_->config().block;
  }

  std::uint64_t size() const { return raw_.size; }

  Run<T> finish() {
    flush();
    lease_ = {};
    return Run<T>(raw_);
  }

 private:
  void flush() {
    if (buffer_.empty()) return;
    write(buffer_);
    buffer_.clear();
  }
  void write(std::span<const T> records) {
    raw_.region->write_block(next_block_, std::as_bytes(records));
    storage_->record_transfer(IoDirection::write, raw_.region_id, next_block_, counter_.next());
    ++next_block_;
  }

  Storage* storage_;
  MemoryLease lease_;
  TransferCounter counter_;
  RawRun raw_;
  std::vector<T> buffer_;
  std::uint64_t next_block_ = 0;
  bool sealed_ = false;
};

/// Sequential reader over [begin, end) of a run, one block resident at a time.
template <class T>
class RunReader {
 public:
  explicit RunReader(const Run<T>& run, std::uint64_t begin = 0,
                     std::uint64_t end = std::numeric_limits<std::uint64_t>::max())
      : run_(run),
        pos_(begin),
        end_(std::min(end, run.size())),
        counter_(run.storage() ? run.storage()->config().disks : 1) {
    if (pos_ < end_) lease_ = run.storage()->lease(run.storage()->config().block);
  }

  bool done() const { return pos_ >= end_; }
  std::uint64_t position() const { return pos_; }

  const T& peek() {
    const auto b = run_.block_records();
    const auto block = pos_ / b;
    if (block != loaded_) load(block);
    return buffer_[pos_ - block * b];
  }
  void advance() { ++pos_; }
  bool next(T& out) {
    if (done()) return false;
    out = peek();
    advance();
    return true;
  }

 private:
  void load(std::uint64_t block) {
    buffer_.resize(run_.records_in_block(block));
    run_.fetch_block(block, buffer_, counter_.next());
    loaded_ = block;
  }

  Run<T> run_;
  std::uint64_t pos_;
  std::uint64_t end_;
  TransferCounter counter_;
  MemoryLease lease_;
  std::vector<T> buffer_;
  std::uint64_t loaded_ = std::numeric_limits<std::uint64_t>::max();
};

/// Random access by record index; caches the last fetched block. Every fetch
/// is a charged I/O.
template <class T>
class RandomReader {
 public:
  explicit RandomReader(const Run<T>& run) : run_(run) {
    if (!run.empty()) lease_ = run.storage()->lease(run.storage()->config().block);
  }

  const T& at(std::uint64_t index) {
    if (index >= run_.size()) throw RangeError("record index out of range");
    const auto b = run_.block_records();
    const auto block = index / b;
    if (block != loaded_) {
      buffer_.resize(run_.records_in_block(block));
      run_.fetch_block(block, buffer_, true);
      loaded_ = block;
    }
    return buffer_[index - block * b];
  }

 private:
  Run<T> run_;
  MemoryLease lease_;
  std::vector<T> buffer_;
  std::uint64_t loaded_ = std::numeric_limits<std::uint64_t>::max();
};

template <class T, class Fn>
void for_each(const Run<T>& run, Fn&& fn) {
  RunReader<T> reader(run);
  T record;
  while (reader.next(record)) fn(record);
}

template <class T>
Run<T> make_run(Storage& storage, std::span<const T> records) {
  RunWriter<T> writer(storage);
  for (const auto& r : records) writer.push(r);
  return writer.finish();
}

template <class T>
Run<T> make_run(Storage& storage, const std::vector<T>& records) {
  return make_run(storage, std::span<const T>(records));
}

// Materializes a whole run. Diagnostic and test use only: the result is not
// leased against M.
template <class T>
std::vector<T> to_vector(const Run<T>& run) {
  std::vector<T> out;
  out.reserve(run.size());
  for_each(run, [&](const T& r) { out.push_back(r); });
  return out;
}

template <class T, class Pred>
Run<T> filter(const Run<T>& run, Storage& storage, Pred&& keep) {
  RunWriter<T> writer(storage);
  for_each(run, [&](const T& r) {
    if (keep(r)) writer.push(r);
  });
  return writer.finish();
}

}  // namespace emg::em
