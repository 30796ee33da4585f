#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "fusionkit/tensor.hpp"

namespace fusionkit {

/*
 * safetensors container layout:
 *   - 8 bytes: little-endian u64 header length N
 *   - N bytes: UTF-8 JSON mapping tensor name -> {dtype, shape,
 *     data_offsets: [begin, end)} plus an optional "__metadata__"
 *     string map
 *   - raw data section; offsets are relative to its start
 *
 * The writer emits tensors in lexicographic key order with contiguous
 * offsets, so identical maps produce byte-identical files. Headers
 * larger than 100 MB are rejected.
 */

struct CheckpointRef {
    enum class Format { safetensors };

    std::filesystem::path path;
    Format format = Format::safetensors;

    CheckpointRef() = default;
    CheckpointRef(std::filesystem::path p) : path(std::move(p)) {}  // NOLINT(google-explicit-constructor)
};

struct TensorIndexEntry {
    DType dtype;
    std::vector<size_t> shape;
    uint64_t begin = 0;  // relative to data section
    uint64_t end = 0;
};

// Open handle over a checkpoint. Only the header is read at open time;
// tensor payloads are fetched on demand with pread, so concurrent
// load_tensor calls are safe. bytes_read() counts every byte requested
// from the file, which the lazy-open contract tests rely on.
class LazyCheckpoint {
  public:
    LazyCheckpoint(const LazyCheckpoint&) = delete;
    LazyCheckpoint& operator=(const LazyCheckpoint&) = delete;
    LazyCheckpoint(LazyCheckpoint&& other) noexcept;
    LazyCheckpoint& operator=(LazyCheckpoint&& other) noexcept;
    ~LazyCheckpoint();

    const std::map<std::string, TensorIndexEntry>& index() const { return index_; }
    const std::map<std::string, std::string>& metadata() const { return metadata_; }
    bool contains(const std::string& key) const { return index_.count(key) != 0; }
    std::vector<std::string> keys() const;

    Tensor load_tensor(const std::string& key) const;
    TensorMap load_all() const;

    uint64_t bytes_read() const { return bytes_read_->load(); }
    const std::filesystem::path& path() const { return path_; }

  private:
    friend LazyCheckpoint open_lazy(const CheckpointRef& ref);
    LazyCheckpoint() = default;

    int fd_ = -1;
    std::filesystem::path path_;
    uint64_t data_offset_ = 0;
    uint64_t data_size_ = 0;
    std::map<std::string, TensorIndexEntry> index_;
    std::map<std::string, std::string> metadata_;
    std::shared_ptr<std::atomic<uint64_t>> bytes_read_ = std::make_shared<std::atomic<uint64_t>>(0);
};

LazyCheckpoint open_lazy(const CheckpointRef& ref);

// Writes `m` to `path` (temp file + rename, so failures leave no partial
// file) and returns a ref to the result.
CheckpointRef save_map(const TensorMap& m, const std::filesystem::path& path);

// open_lazy + load_all in one step.
TensorMap load_checkpoint(const CheckpointRef& ref);

}  // namespace fusionkit
