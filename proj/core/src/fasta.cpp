#include "degradex/fasta.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "degradex/errors.hpp"
#include "degradex/rng.hpp"

namespace degradex {

namespace {

void strip_trailing_whitespace(std::string& line) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
        line.pop_back();
    }
}

}  // namespace

std::string reverse_complement(std::string_view sequence) {
    std::string rc;
    rc.resize(sequence.size());
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        rc[i] = complement(sequence[sequence.size() - 1 - i]);
    }
    return rc;
}

SanitizePolicy sanitize_policy_from_string(std::string_view name) {
    if (name == "reject") return SanitizePolicy::Reject;
    if (name == "drop") return SanitizePolicy::Drop;
    if (name == "replace") return SanitizePolicy::RandomReplace;
    throw ConfigError("unknown ambiguous-base policy: " + std::string(name));
}

std::string_view to_string(SanitizePolicy policy) {
    switch (policy) {
        case SanitizePolicy::Reject: return "reject";
        case SanitizePolicy::Drop: return "drop";
        case SanitizePolicy::RandomReplace: return "replace";
    }
    return "?";
}

std::string sanitize(std::string_view raw, SanitizePolicy policy, std::uint64_t seed) {
    std::string out;
    out.reserve(raw.size());
    Rng rng(seed);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw[i])));
        if (base_index(c) >= 0) {
            out.push_back(c);
            continue;
        }
        switch (policy) {
            case SanitizePolicy::Reject:
                throw AmbiguousBase(
                    "ambiguous base '" + std::string(1, raw[i]) + "' at position " +
                        std::to_string(i),
                    i);
            case SanitizePolicy::Drop:
                break;
            case SanitizePolicy::RandomReplace:
                out.push_back(kAlphabet[rng.uniform_below(4)]);
                break;
        }
    }
    return out;
}

std::vector<Genome> parse_fasta(std::istream& in, SanitizePolicy policy,
                                std::uint64_t seed) {
    std::vector<Genome> genomes;
    Rng rng(seed);

    std::string line;
    bool in_record = false;
    Genome current;
    std::string raw;

    auto flush_record = [&]() {
        current.bases.clear();
        current.bases.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw[i])));
            if (base_index(c) >= 0) {
                current.bases.push_back(c);
            } else {
                switch (policy) {
                    case SanitizePolicy::Reject:
                        throw AmbiguousBase("record '" + current.id +
                                                "': ambiguous base '" + std::string(1, raw[i]) +
                                                "' at sequence position " + std::to_string(i),
                                            i);
                    case SanitizePolicy::Drop:
                        break;
                    case SanitizePolicy::RandomReplace:
                        current.bases.push_back(kAlphabet[rng.uniform_below(4)]);
                        break;
                }
            }
        }
        if (current.bases.empty()) {
            throw ParseError("record '" + current.id + "' has an empty sequence");
        }
        genomes.push_back(std::move(current));
        current = Genome{};
        raw.clear();
    };

    while (std::getline(in, line)) {
        strip_trailing_whitespace(line);  // also normalizes CRLF
        if (line.empty()) continue;
        if (line[0] == '>') {
            if (in_record) flush_record();
            in_record = true;
            const std::string header = line.substr(1);
            const std::size_t sep = header.find_first_of(" \t");
            if (sep == std::string::npos) {
                current.id = header;
                current.description.clear();
            } else {
                current.id = header.substr(0, sep);
                const std::size_t rest = header.find_first_not_of(" \t", sep);
                current.description = rest == std::string::npos ? "" : header.substr(rest);
            }
            if (current.id.empty()) {
                throw ParseError("FASTA header with empty id");
            }
        } else {
            if (!in_record) {
                throw ParseError("sequence data before any FASTA header");
            }
            raw += line;
        }
    }
    if (in_record) flush_record();
    if (genomes.empty()) {
        throw ParseError("no FASTA records found");
    }
    return genomes;
}

std::vector<Genome> parse_fasta_file(const std::string& path, SanitizePolicy policy,
                                     std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open FASTA file: " + path);
    return parse_fasta(in, policy, seed);
}

void write_fasta(const std::vector<Genome>& genomes, std::ostream& out,
                 std::size_t line_width) {
    if (line_width < 1) throw ConfigError("FASTA line width must be >= 1");
    for (const Genome& g : genomes) {
        out << '>' << g.id;
        if (!g.description.empty()) out << ' ' << g.description;
        out << '\n';
        const std::string& s = g.bases;
        for (std::size_t i = 0; i < s.size(); i += line_width) {
            out.write(s.data() + i, static_cast<std::streamsize>(
                                        std::min(line_width, s.size() - i)));
            out << '\n';
        }
    }
}

void write_fasta_file(const std::vector<Genome>& genomes, const std::string& path,
                      std::size_t line_width) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output FASTA file: " + path);
    write_fasta(genomes, out, line_width);
}

}  // namespace degradex
