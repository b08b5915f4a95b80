#pragma once

#include <stdexcept>
#include <string>

namespace grpoly {

// Resource limits for derived constructions. The first two are user-facing
// (CLI flags); the rest guard internal blowups with distinct messages.
struct Caps {
    long max_objects = 5000;        // objects in any derived groupoid
    long max_sections = 1000000;    // section-search budget in dep_prod
    long max_group_order = 64;      // vertex group order in equivalence search
    long max_morphisms = 2000000;   // morphisms in any derived groupoid
};

// Exit-code carriers. validation_error -> 1, cap_error -> 2, parse_error -> 3.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& m) : std::runtime_error(m) {}
};

struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& m) : std::runtime_error(m) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};

inline void check_object_cap(long n, const Caps& caps, const std::string& what) {
    if (n > caps.max_objects)
        throw cap_error(what + ": object count " + std::to_string(n) +
                        " exceeds cap " + std::to_string(caps.max_objects));
}

inline void check_morphism_cap(long n, const Caps& caps, const std::string& what) {
    if (n > caps.max_morphisms)
        throw cap_error(what + ": morphism count " + std::to_string(n) +
                        " exceeds cap " + std::to_string(caps.max_morphisms));
}

inline void check_section_cap(long n, const Caps& caps, const std::string& what) {
    if (n > caps.max_sections)
        throw cap_error(what + ": section budget " + std::to_string(n) +
                        " exceeds cap " + std::to_string(caps.max_sections));
}

}  // namespace grpoly
