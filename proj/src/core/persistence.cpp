#include "core/persistence.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace rslab {

namespace {

void put_u16(std::vector<unsigned char>& out, uint16_t v) {
    out.push_back((unsigned char)(v & 0xff));
    out.push_back((unsigned char)(v >> 8));
}

void put_u64(std::vector<unsigned char>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back((unsigned char)(v >> (8 * i)));
}

uint16_t get_u16(const unsigned char* p) { return (uint16_t)(p[0] | (p[1] << 8)); }

uint64_t get_u64(const unsigned char* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= (uint64_t)p[i] << (8 * i);
    return v;
}

}  // namespace

void save_table(const std::string& path, const CoefficientTable& table) {
    if (table.tau.empty() || table.n_max == 0)
        throw argument_error("save_table: table has no tau values");

    std::vector<unsigned char> payload;
    payload.reserve(table.n_max * 16);
    for (uint64_t n = 1; n <= table.n_max; ++n) {
        // two's complement little-endian 128-bit
        uint128 bits = (uint128)table.tau[n];
        put_u64(payload, (uint64_t)bits);
        put_u64(payload, (uint64_t)(bits >> 64));
    }

    std::vector<unsigned char> header;
    header.insert(header.end(), kCacheMagic, kCacheMagic + 4);
    put_u16(header, kCacheVersion);
    put_u64(header, table.n_max);
    put_u16(header, (uint16_t)table.kappa);
    put_u64(header, fnv1a64(payload.data(), payload.size()));

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("save_table: cannot open " + path);
    f.write((const char*)header.data(), (std::streamsize)header.size());
    f.write((const char*)payload.data(), (std::streamsize)payload.size());
    if (!f) throw io_error("save_table: write failed for " + path);
}

CoefficientTable load_table(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("load_table: cannot open " + path);

    unsigned char header[24];
    f.read((char*)header, sizeof(header));
    if (f.gcount() != sizeof(header)) throw corrupt_cache_error("cache file truncated (header)");
    if (std::memcmp(header, kCacheMagic, 4) != 0)
        throw corrupt_cache_error("cache magic mismatch");
    if (get_u16(header + 4) != kCacheVersion)
        throw corrupt_cache_error("cache version mismatch");
    uint64_t n_max = get_u64(header + 6);
    uint16_t kappa = get_u16(header + 14);
    uint64_t checksum = get_u64(header + 16);
    if (n_max == 0 || kappa != 12) throw corrupt_cache_error("cache header invalid");

    std::vector<unsigned char> payload(n_max * 16);
    f.read((char*)payload.data(), (std::streamsize)payload.size());
    if ((uint64_t)f.gcount() != payload.size())
        throw corrupt_cache_error("cache file truncated (payload)");
    if (fnv1a64(payload.data(), payload.size()) != checksum)
        throw corrupt_cache_error("cache checksum mismatch");

    std::vector<int128> tau(n_max + 1, 0);
    for (uint64_t n = 1; n <= n_max; ++n) {
        const unsigned char* p = payload.data() + (n - 1) * 16;
        uint128 bits = ((uint128)get_u64(p + 8) << 64) | get_u64(p);
        tau[n] = (int128)bits;
    }
    return CoefficientTable::from_tau(std::move(tau));
}

CoefficientTable import_external_tau(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("import_external_tau: cannot open " + path);

    std::vector<int128> tau;
    tau.push_back(0);  // index 0 unused
    std::string line;
    uint64_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream is(line);
        uint64_t n;
        std::string value;
        if (!(is >> n >> value)) {
            std::ostringstream os;
            os << "import: parse failure at line " << lineno;
            throw format_error(os.str());
        }
        if (n != tau.size()) {
            std::ostringstream os;
            os << "import: expected index " << tau.size() << " at line " << lineno
               << ", got " << n;
            throw format_error(os.str());
        }
        // parse signed decimal into int128
        bool neg = false;
        size_t pos = 0;
        if (pos < value.size() && (value[pos] == '-' || value[pos] == '+')) {
            neg = value[pos] == '-';
            ++pos;
        }
        if (pos >= value.size()) {
            std::ostringstream os;
            os << "import: bad integer at line " << lineno;
            throw format_error(os.str());
        }
        uint128 mag = 0;
        for (; pos < value.size(); ++pos) {
            char ch = value[pos];
            if (ch < '0' || ch > '9') {
                std::ostringstream os;
                os << "import: bad integer at line " << lineno;
                throw format_error(os.str());
            }
            uint128 next = mag * 10 + (uint128)(ch - '0');
            if (next < mag || next > ((uint128)1 << 127))
                throw overflow_error("import: value exceeds 128 bits");
            mag = next;
        }
        if (!neg && mag == ((uint128)1 << 127))
            throw overflow_error("import: value exceeds 128 bits");
        tau.push_back(neg ? -(int128)mag : (int128)mag);
    }
    if (tau.size() < 2) throw format_error("import: no tau values found");

    uint64_t n_max = tau.size() - 1;
    uint64_t check_to = std::min<uint64_t>(n_max, kOracleTauLimit);
    std::vector<mpz_class> reference = sieve_tau(check_to);
    for (uint64_t n = 1; n <= check_to; ++n) {
        mpz_class imported(int128_to_string(tau[n]));
        if (imported != reference[n]) {
            std::ostringstream os;
            os << "import: value at n = " << n << " disagrees with the bundled sieve";
            throw format_error(os.str());
        }
    }
    return CoefficientTable::from_tau(std::move(tau));
}

}  // namespace rslab
