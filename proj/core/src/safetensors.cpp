#include "fusionkit/safetensors.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <vector>

#include "json.hpp"

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

using nlohmann::json;

constexpr uint64_t kMaxHeaderBytes = 100ull * 1024 * 1024;
constexpr const char* kMetadataKey = "__metadata__";

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
    fail(errc::io_error, "'" + path.string() + "': " + what +
                             (errno != 0 ? std::string(": ") + std::strerror(errno) : ""));
}

uint64_t read_le_u64(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

void write_le_u64(uint8_t* p, uint64_t v) {
    for (int i = 0; i < 8; ++i) p[i] = uint8_t(v >> (8 * i));
}

}  // namespace

LazyCheckpoint::LazyCheckpoint(LazyCheckpoint&& other) noexcept { *this = std::move(other); }

LazyCheckpoint& LazyCheckpoint::operator=(LazyCheckpoint&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) ::close(fd_);
        fd_ = other.fd_;
        other.fd_ = -1;
        path_ = std::move(other.path_);
        data_offset_ = other.data_offset_;
        data_size_ = other.data_size_;
        index_ = std::move(other.index_);
        metadata_ = std::move(other.metadata_);
        bytes_read_ = std::move(other.bytes_read_);
    }
    return *this;
}

LazyCheckpoint::~LazyCheckpoint() {
    if (fd_ >= 0) ::close(fd_);
}

std::vector<std::string> LazyCheckpoint::keys() const {
    std::vector<std::string> out;
    out.reserve(index_.size());
    for (const auto& [k, e] : index_) out.push_back(k);
    return out;
}

LazyCheckpoint open_lazy(const CheckpointRef& ref) {
    LazyCheckpoint cp;
    cp.path_ = ref.path;

    errno = 0;
    cp.fd_ = ::open(ref.path.c_str(), O_RDONLY | O_CLOEXEC);
    if (cp.fd_ < 0) io_fail(ref.path, "cannot open");

    off_t file_size = ::lseek(cp.fd_, 0, SEEK_END);
    if (file_size < 0) io_fail(ref.path, "cannot stat");

    auto read_at = [&](uint64_t offset, void* buf, size_t len) {
        size_t done = 0;
        while (done < len) {
            const ssize_t n =
                ::pread(cp.fd_, static_cast<char*>(buf) + done, len - done, off_t(offset + done));
            if (n < 0) io_fail(ref.path, "read failed");
            if (n == 0) fail(errc::malformed_header, "'" + ref.path.string() + "': unexpected end of file");
            done += size_t(n);
        }
        *cp.bytes_read_ += len;
    };

    if (uint64_t(file_size) < 8) {
        fail(errc::malformed_header, "'" + ref.path.string() + "': shorter than the 8-byte length prefix");
    }
    uint8_t len_buf[8];
    read_at(0, len_buf, 8);
    const uint64_t header_len = read_le_u64(len_buf);
    if (header_len > kMaxHeaderBytes) {
        fail(errc::malformed_header, "'" + ref.path.string() + "': header length " +
                                         std::to_string(header_len) + " exceeds the 100 MB limit");
    }
    if (header_len > uint64_t(file_size) - 8) {
        fail(errc::malformed_header,
             "'" + ref.path.string() + "': declared header length exceeds the file size");
    }

    std::vector<uint8_t> header_bytes(header_len);
    if (header_len > 0) read_at(8, header_bytes.data(), header_len);
    cp.data_offset_ = 8 + header_len;
    cp.data_size_ = uint64_t(file_size) - cp.data_offset_;

    const json header = json::parse(header_bytes.begin(), header_bytes.end(), nullptr,
                                    /*allow_exceptions=*/false);
    if (header.is_discarded() || !header.is_object()) {
        fail(errc::malformed_header, "'" + ref.path.string() + "': header is not a JSON object");
    }

    for (const auto& [key, value] : header.items()) {
        if (key == kMetadataKey) {
            if (!value.is_object()) {
                fail(errc::malformed_header, "'" + ref.path.string() + "': __metadata__ is not an object");
            }
            for (const auto& [mk, mv] : value.items()) {
                if (!mv.is_string()) {
                    fail(errc::malformed_header,
                         "'" + ref.path.string() + "': __metadata__ values must be strings");
                }
                cp.metadata_[mk] = mv.get<std::string>();
            }
            continue;
        }
        if (!value.is_object() || !value.contains("dtype") || !value.contains("shape") ||
            !value.contains("data_offsets")) {
            fail(errc::malformed_header,
                 "'" + ref.path.string() + "': entry '" + key + "' lacks dtype/shape/data_offsets");
        }
        if (!value["dtype"].is_string()) {
            fail(errc::malformed_header, "'" + ref.path.string() + "': dtype of '" + key + "' is not a string");
        }
        const auto dt = dtype_from_name(value["dtype"].get<std::string>());
        if (!dt) {
            fail(errc::unsupported_dtype, "'" + ref.path.string() + "': tensor '" + key +
                                              "' has unsupported dtype '" +
                                              value["dtype"].get<std::string>() + "'");
        }

        TensorIndexEntry entry;
        entry.dtype = *dt;
        if (!value["shape"].is_array()) {
            fail(errc::malformed_header, "'" + ref.path.string() + "': shape of '" + key + "' is not a list");
        }
        for (const auto& d : value["shape"]) {
            if (!d.is_number_unsigned()) {
                fail(errc::malformed_header, "'" + ref.path.string() + "': shape of '" + key +
                                                 "' must contain non-negative integers");
            }
            entry.shape.push_back(d.get<uint64_t>());
        }
        const auto& offs = value["data_offsets"];
        if (!offs.is_array() || offs.size() != 2 || !offs[0].is_number_unsigned() ||
            !offs[1].is_number_unsigned()) {
            fail(errc::malformed_header,
                 "'" + ref.path.string() + "': data_offsets of '" + key + "' must be [begin, end]");
        }
        entry.begin = offs[0].get<uint64_t>();
        entry.end = offs[1].get<uint64_t>();
        if (entry.begin > entry.end || entry.end > cp.data_size_) {
            fail(errc::malformed_header, "'" + ref.path.string() + "': data_offsets of '" + key +
                                             "' fall outside the data section");
        }
        size_t numel = 0;
        if (!checked_numel(entry.shape, numel)) {
            fail(errc::malformed_header, "'" + ref.path.string() + "': shape of '" + key + "' overflows");
        }
        if (numel > (entry.end - entry.begin) / dtype_size(entry.dtype) ||
            numel * dtype_size(entry.dtype) != entry.end - entry.begin) {
            fail(errc::malformed_header, "'" + ref.path.string() + "': byte range of '" + key +
                                             "' does not match shape " + shape_to_string(entry.shape));
        }
        cp.index_.emplace(key, std::move(entry));
    }

    // Ranges must not overlap (zero-length ranges cannot).
    std::vector<std::pair<uint64_t, uint64_t>> ranges;
    ranges.reserve(cp.index_.size());
    for (const auto& [k, e] : cp.index_) {
        if (e.begin != e.end) ranges.emplace_back(e.begin, e.end);
    }
    std::sort(ranges.begin(), ranges.end());
    for (size_t i = 1; i < ranges.size(); ++i) {
        if (ranges[i].first < ranges[i - 1].second) {
            fail(errc::malformed_header, "'" + ref.path.string() + "': tensor byte ranges overlap");
        }
    }
    return cp;
}

Tensor LazyCheckpoint::load_tensor(const std::string& key) const {
    const auto it = index_.find(key);
    if (it == index_.end()) {
        fail(errc::unknown_key, "'" + path_.string() + "': no tensor named '" + key + "'");
    }
    const TensorIndexEntry& entry = it->second;
    Tensor t(entry.dtype, entry.shape);
    const size_t len = entry.end - entry.begin;
    size_t done = 0;
    while (done < len) {
        errno = 0;
        const ssize_t n = ::pread(fd_, t.data.data() + done, len - done,
                                  off_t(data_offset_ + entry.begin + done));
        if (n < 0) io_fail(path_, "read of tensor '" + key + "' failed");
        if (n == 0) io_fail(path_, "tensor '" + key + "' is truncated");
        done += size_t(n);
    }
    *bytes_read_ += len;
    return t;
}

TensorMap LazyCheckpoint::load_all() const {
    TensorMap out;
    for (const auto& [key, entry] : index_) {
        out.emplace_hint(out.end(), key, load_tensor(key));
    }
    return out;
}

CheckpointRef save_map(const TensorMap& m, const std::filesystem::path& path) {
    json header = json::object();
    header[kMetadataKey] = {{"format", "fusionkit.checkpoint.v1"}};

    uint64_t cursor = 0;
    for (const auto& [key, t] : m) {
        json entry;
        entry["dtype"] = dtype_name(t.dtype);
        entry["shape"] = t.shape;
        entry["data_offsets"] = {cursor, cursor + t.nbytes()};
        header[key] = std::move(entry);
        cursor += t.nbytes();
    }
    const std::string header_str = header.dump();

    const std::filesystem::path tmp = path.string() + ".tmp";
    errno = 0;
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (f == nullptr) io_fail(tmp, "cannot create");

    auto cleanup_fail = [&](const std::string& what) -> void {
        std::fclose(f);
        std::remove(tmp.c_str());
        io_fail(tmp, what);
    };

    uint8_t len_buf[8];
    write_le_u64(len_buf, header_str.size());
    if (std::fwrite(len_buf, 1, 8, f) != 8) cleanup_fail("write failed");
    if (!header_str.empty() &&
        std::fwrite(header_str.data(), 1, header_str.size(), f) != header_str.size()) {
        cleanup_fail("write failed");
    }
    for (const auto& [key, t] : m) {
        if (!t.data.empty() && std::fwrite(t.data.data(), 1, t.data.size(), f) != t.data.size()) {
            cleanup_fail("write failed");
        }
    }
    if (std::fflush(f) != 0) cleanup_fail("flush failed");
    if (std::fclose(f) != 0) {
        std::remove(tmp.c_str());
        io_fail(tmp, "close failed");
    }
    errno = 0;
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        io_fail(path, "rename failed");
    }
    return CheckpointRef(path);
}

TensorMap load_checkpoint(const CheckpointRef& ref) { return open_lazy(ref).load_all(); }

}  // namespace fusionkit
