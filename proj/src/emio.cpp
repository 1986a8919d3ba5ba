#include "emg/emio.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <string>

#include <unistd.h>

namespace emg::em {

void EmConfig::validate() const {
  if (block < 1) throw ConfigError("block size B must be at least 1");
  if (disks < 1) throw ConfigError("disk count D must be at least 1");
  if (memory < 2 * block) throw ConfigError("memory M must hold at least two blocks");
  // Run formation plus a merge of fan-in M/B - 1 >= 2 needs three blocks.
  if (memory / block < 3) throw ConfigError("memory M must hold at least three blocks for merging");
}

std::uint64_t scan_cost(std::uint64_t records, const EmConfig& cfg) {
  const auto blocks = (records + cfg.block - 1) / cfg.block;
  return (blocks + cfg.disks - 1) / cfg.disks;
}

double scan_units(double records, const EmConfig& cfg) {
  return records / (static_cast<double>(cfg.disks) * static_cast<double>(cfg.block));
}

double sort_units(double records, const EmConfig& cfg) {
  const double fan = static_cast<double>(cfg.memory) / static_cast<double>(cfg.block);
  const double blocks = std::max(1.0, records / static_cast<double>(cfg.block));
  const double passes = 1.0 + std::max(0.0, std::ceil(std::log(blocks) / std::log(fan) - 1e-12));
  return scan_units(records, cfg) * passes;
}

namespace {

class MemoryRegion final : public Region {
 public:
  explicit MemoryRegion(std::uint64_t block_bytes) : block_bytes_(block_bytes) {}

  void write_block(std::uint64_t index, std::span<const std::byte> bytes) override {
    const auto offset = index * block_bytes_;
    if (data_.size() < offset + bytes.size()) data_.resize(offset + bytes.size());
    std::memcpy(data_.data() + offset, bytes.data(), bytes.size());
  }

  void read_block(std::uint64_t index, std::span<std::byte> out) const override {
    const auto offset = index * block_bytes_;
    if (offset + out.size() > data_.size()) throw IoError(index, "read past end of region");
    std::memcpy(out.data(), data_.data() + offset, out.size());
  }

 private:
  std::uint64_t block_bytes_;
  std::vector<std::byte> data_;
};

class MemoryDevice final : public BlockDevice {
 public:
  std::unique_ptr<Region> create_region(std::uint64_t block_bytes) override {
    return std::make_unique<MemoryRegion>(block_bytes);
  }
};

class FileRegion final : public Region {
 public:
  FileRegion(std::filesystem::path path, std::uint64_t block_bytes)
      : path_(std::move(path)), block_bytes_(block_bytes) {
    file_.open(path_, std::ios::in | std::ios::out | std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError(0, "cannot create scratch file " + path_.string());
  }
  ~FileRegion() override {
    file_.close();
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }

  void write_block(std::uint64_t index, std::span<const std::byte> bytes) override {
    file_.clear();
    file_.seekp(static_cast<std::streamoff>(index * block_bytes_));
    file_.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!file_) throw IoError(index, "write failed on " + path_.string());
  }

  void read_block(std::uint64_t index, std::span<std::byte> out) const override {
    file_.clear();
    file_.seekg(static_cast<std::streamoff>(index * block_bytes_));
    file_.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!file_ || static_cast<std::size_t>(file_.gcount()) != out.size()) {
      throw IoError(index, "read failed on " + path_.string());
    }
  }

 private:
  std::filesystem::path path_;
  std::uint64_t block_bytes_;
  mutable std::fstream file_;
};

class FileDevice final : public BlockDevice {
 public:
  explicit FileDevice(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::unique_ptr<Region> create_region(std::uint64_t block_bytes) override {
    static std::atomic<std::uint64_t> counter{0};
    auto name = "emg-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".run";
    return std::make_unique<FileRegion>(dir_ / name, block_bytes);
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace

std::unique_ptr<BlockDevice> make_memory_device() { return std::make_unique<MemoryDevice>(); }

std::unique_ptr<BlockDevice> make_file_device(const std::filesystem::path& dir) {
  return std::make_unique<FileDevice>(dir);
}

MemoryLease::MemoryLease(Storage* storage, std::uint64_t records) : storage_(storage), records_(records) {
  if (storage_) storage_->acquire(records_);
}

MemoryLease::MemoryLease(MemoryLease&& other) noexcept
    : storage_(std::exchange(other.storage_, nullptr)), records_(std::exchange(other.records_, 0)) {}

MemoryLease& MemoryLease::operator=(MemoryLease&& other) noexcept {
  if (this != &other) {
    release();
    storage_ = std::exchange(other.storage_, nullptr);
    records_ = std::exchange(other.records_, 0);
  }
  return *this;
}

MemoryLease::~MemoryLease() { release(); }

void MemoryLease::release() {
  if (storage_) storage_->release(records_);
  storage_ = nullptr;
  records_ = 0;
}

void MemoryLease::resize(std::uint64_t records) {
  if (!storage_) return;
  if (records > records_) {
    storage_->acquire(records - records_);
  } else {
    storage_->release(records_ - records);
  }
  records_ = records;
}

Storage::Storage(EmConfig cfg)
    : Storage(cfg, cfg.scratch_dir.empty() ? make_memory_device() : make_file_device(cfg.scratch_dir)) {}

Storage::Storage(EmConfig cfg, std::unique_ptr<BlockDevice> device) : cfg_(std::move(cfg)), device_(std::move(device)) {
  cfg_.validate();
}

void Storage::acquire(std::uint64_t records) {
  resident_ += records;
  peak_ = std::max(peak_, resident_);
  if (resident_ > cfg_.memory) {
    ++violations_;
    if (cfg_.strict_memory) {
      resident_ -= records;
      throw MemoryBudgetError("simulated memory exceeded: " + std::to_string(resident_ + records) + " > M=" +
                              std::to_string(cfg_.memory));
    }
  }
}

std::shared_ptr<Region> Storage::create_region(std::uint64_t block_bytes, std::uint64_t* id) {
  *id = next_region_++;
  return device_->create_region(block_bytes);
}

void Storage::record_transfer(IoDirection direction, std::uint64_t region, std::uint64_t block, bool charged) {
  if (charged) {
    if (direction == IoDirection::read) {
      ++stats_.blocks_read;
    } else {
      ++stats_.blocks_written;
    }
  }
  if (observer_) observer_({direction, region, block, charged});
}

}  // namespace emg::em
