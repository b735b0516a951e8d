#ifndef HRA_FETCH_HPP
#define HRA_FETCH_HPP

#include <curl/curl.h>
#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hra/csv.hpp"
#include "hra/error.hpp"
#include "hra/raw_runs.hpp"

/**
 * @file fetch.hpp
 * @brief Downloads result files listed in an inventory and records a
 *        checksum manifest.
 *
 * The source URL names an inventory file; each non-comment line is
 * `<relative-path>` or `<relative-path>,<byte-count>,<sha256-hex>`, resolved
 * against the inventory's own directory. The manifest written to the
 * destination uses the second form, so a manifest is itself a valid
 * inventory. Any URL scheme libcurl understands works, including file://.
 */

namespace hra {

inline constexpr std::string_view kManifestName = "manifest.csv";

struct ManifestEntry {
    std::string path;
    std::uint64_t bytes = 0;
    std::string sha256;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct InventoryEntry {
    std::string path;
    std::optional<std::uint64_t> bytes;
    std::optional<std::string> sha256;
};

struct FetchResult {
    std::vector<ManifestEntry> manifest;
    std::size_t downloaded = 0;
    std::size_t skipped = 0;
};

struct FetchOptions {
    std::size_t workers = 4;
    long timeout_seconds = 120;
};

inline std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::IoError, "SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

inline std::string read_file_bytes(const std::filesystem::path& path) {
    auto in = csv::open_input(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline ManifestEntry describe_file(const std::filesystem::path& root, const std::string& relative) {
    const auto bytes = read_file_bytes(root / relative);
    return {relative, bytes.size(), sha256_hex(bytes)};
}

namespace detail {

inline bool safe_relative_path(std::string_view p) {
    if (p.empty() || p.front() == '/' || p.find('\\') != p.npos) return false;
    const std::filesystem::path path{std::string(p)};
    return std::none_of(path.begin(), path.end(), [](const auto& part) { return part == ".."; });
}

inline bool is_hex_digest(std::string_view s) {
    return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
               return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
           });
}

struct CurlGlobal {
    CurlGlobal() { curl_global_init(CURL_GLOBAL_DEFAULT); }
    ~CurlGlobal() { curl_global_cleanup(); }
};

inline void ensure_curl() {
    static CurlGlobal global;
}

inline std::size_t append_body(char* data, std::size_t size, std::size_t count, void* user) {
    static_cast<std::string*>(user)->append(data, size * count);
    return size * count;
}

}  // namespace detail

inline std::vector<InventoryEntry> parse_inventory(std::istream& in, std::string_view source) {
    std::vector<InventoryEntry> entries;
    for (const auto& row : csv::read_rows(in)) {
        const auto& f = row.fields;
        const std::string where = std::string(source) + ":" + std::to_string(row.line);
        if (f.size() != 1 && f.size() != 3) {
            throw Error(ErrorKind::UnknownLayout, where + ": expected <path> or <path>,<bytes>,<sha256>");
        }
        if (!detail::safe_relative_path(f[0])) {
            throw Error(ErrorKind::UnknownLayout, where + ": unsafe path '" + f[0] + "'");
        }
        InventoryEntry e{f[0], std::nullopt, std::nullopt};
        if (f.size() == 3) {
            std::uint64_t bytes = 0;
            auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), bytes);
            if (ec != std::errc() || ptr != f[1].data() + f[1].size() || !detail::is_hex_digest(f[2])) {
                throw Error(ErrorKind::UnknownLayout, where + ": malformed byte count or digest");
            }
            e.bytes = bytes;
            e.sha256 = f[2];
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

inline std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
    auto in = csv::open_input(path);
    std::vector<ManifestEntry> out;
    for (auto& e : parse_inventory(in, path.string())) {
        if (!e.bytes || !e.sha256) {
            throw Error(ErrorKind::UnknownLayout, path.string() + ": entry '" + e.path + "' lacks a checksum");
        }
        out.push_back({e.path, *e.bytes, *e.sha256});
    }
    return out;
}

inline std::string render_manifest(std::vector<ManifestEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
    std::string out;
    for (const auto& e : entries) {
        out += e.path + "," + std::to_string(e.bytes) + "," + e.sha256 + "\n";
    }
    return out;
}

/// Re-hashes every file listed in the manifest at `root`.
inline void verify_manifest(const std::filesystem::path& root, const std::vector<ManifestEntry>& manifest) {
    for (const auto& e : manifest) {
        std::error_code ec;
        if (!std::filesystem::is_regular_file(root / e.path, ec)) {
            throw Error(ErrorKind::ChecksumMismatch, "'" + e.path + "' listed in manifest but missing");
        }
        const auto actual = describe_file(root, e.path);
        if (actual.bytes != e.bytes || actual.sha256 != e.sha256) {
            throw Error(ErrorKind::ChecksumMismatch, "'" + e.path + "' has " + std::to_string(actual.bytes) +
                                                         " bytes / sha256 " + actual.sha256 + ", manifest has " +
                                                         std::to_string(e.bytes) + " / " + e.sha256);
        }
    }
}

inline std::string download(const std::string& url, const FetchOptions& options) {
    detail::ensure_curl();
    CURL* handle = curl_easy_init();
    if (handle == nullptr) {
        throw Error(ErrorKind::NetworkError, "cannot initialise transfer for " + url);
    }
    std::string body;
    curl_easy_setopt(handle, CURLOPT_URL, url.c_str());
    curl_easy_setopt(handle, CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(handle, CURLOPT_FAILONERROR, 1L);
    curl_easy_setopt(handle, CURLOPT_NOSIGNAL, 1L);
    curl_easy_setopt(handle, CURLOPT_TIMEOUT, options.timeout_seconds);
    curl_easy_setopt(handle, CURLOPT_WRITEFUNCTION, &detail::append_body);
    curl_easy_setopt(handle, CURLOPT_WRITEDATA, &body);
    const CURLcode rc = curl_easy_perform(handle);
    curl_easy_cleanup(handle);
    if (rc != CURLE_OK) {
        throw Error(ErrorKind::NetworkError, url + ": " + curl_easy_strerror(rc));
    }
    return body;
}

/**
 * @brief Mirrors the files named by the inventory at `source_url` into
 *        `destination` and writes `destination/manifest.csv`.
 *
 * Files already recorded in an existing manifest are re-verified and
 * skipped; a local file that no longer matches its manifest entry is a
 * ChecksumMismatch rather than a silent re-download. Every inventory path
 * must be a recognised result file name, otherwise UnknownLayout is raised
 * before anything is downloaded.
 */
inline FetchResult fetch_raw(const std::string& source_url, const std::filesystem::path& destination,
                             const FetchOptions& options = {}) {
    const auto slash = source_url.rfind('/');
    if (slash == std::string::npos) {
        throw Error(ErrorKind::NetworkError, "'" + source_url + "' is not a URL");
    }
    const std::string base = source_url.substr(0, slash + 1);

    std::istringstream inventory_text(download(source_url, options));
    const auto inventory = parse_inventory(inventory_text, source_url);
    if (inventory.empty()) {
        throw Error(ErrorKind::UnknownLayout, source_url + ": inventory lists no files");
    }
    for (const auto& e : inventory) {
        if (!parse_run_file_name(std::filesystem::path(e.path).filename().string())) {
            throw Error(ErrorKind::UnknownLayout, "inventory entry '" + e.path +
                                                      "' is not named <algorithm>_<function>_<dimension>.txt");
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(destination, ec);
    if (ec) {
        throw Error(ErrorKind::IoError, "cannot create '" + destination.string() + "': " + ec.message());
    }

    std::map<std::string, ManifestEntry> recorded;
    const auto manifest_path = destination / std::string(kManifestName);
    if (std::filesystem::exists(manifest_path)) {
        for (auto& e : read_manifest(manifest_path)) recorded.emplace(e.path, std::move(e));
    }

    FetchResult result;
    std::vector<const InventoryEntry*> pending;
    for (const auto& e : inventory) {
        auto it = recorded.find(e.path);
        if (it != recorded.end() && std::filesystem::exists(destination / e.path)) {
            verify_manifest(destination, {it->second});
            if ((e.sha256 && *e.sha256 != it->second.sha256) || (e.bytes && *e.bytes != it->second.bytes)) {
                throw Error(ErrorKind::ChecksumMismatch,
                            "'" + e.path + "' on disk differs from the inventory checksum");
            }
            result.manifest.push_back(it->second);
            ++result.skipped;
        } else {
            pending.push_back(&e);
        }
    }

    std::mutex guard;
    auto fetch_one = [&](const InventoryEntry& e) {
        const std::string body = download(base + e.path, options);
        ManifestEntry actual{e.path, body.size(), sha256_hex(body)};
        if ((e.bytes && *e.bytes != actual.bytes) || (e.sha256 && *e.sha256 != actual.sha256)) {
            throw Error(ErrorKind::ChecksumMismatch, "'" + e.path + "' downloaded with " +
                                                         std::to_string(actual.bytes) + " bytes / sha256 " +
                                                         actual.sha256 + ", inventory expects " +
                                                         (e.bytes ? std::to_string(*e.bytes) : "?") + " / " +
                                                         e.sha256.value_or("?"));
        }
        const auto target = destination / e.path;
        std::filesystem::create_directories(target.parent_path());
        const auto partial = target.string() + ".part";
        {
            auto out = csv::open_output(partial);
            out.write(body.data(), static_cast<std::streamsize>(body.size()));
            csv::finish_output(out, partial);
        }
        std::filesystem::rename(partial, target);
        std::lock_guard lock(guard);
        result.manifest.push_back(std::move(actual));
        ++result.downloaded;
    };

    const std::size_t workers = std::max<std::size_t>(1, options.workers);
    for (std::size_t start = 0; start < pending.size(); start += workers) {
        std::vector<std::future<void>> batch;
        for (std::size_t i = start; i < std::min(pending.size(), start + workers); ++i) {
            batch.push_back(std::async(std::launch::async, fetch_one, std::cref(*pending[i])));
        }
        // drain the whole batch before rethrowing the first failure
        std::exception_ptr first;
        for (auto& f : batch) {
            try {
                f.get();
            } catch (...) {
                if (!first) first = std::current_exception();
            }
        }
        if (first) std::rethrow_exception(first);
    }

    std::sort(result.manifest.begin(), result.manifest.end(),
              [](const auto& a, const auto& b) { return a.path < b.path; });
    auto out = csv::open_output(manifest_path);
    out << render_manifest(result.manifest);
    csv::finish_output(out, manifest_path);
    return result;
}

}  // namespace hra

#endif  // HRA_FETCH_HPP
