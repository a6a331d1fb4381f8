#pragma once

#include <iosfwd>
#include <string>

#include "domino/syntax.hpp"

namespace domino {

// Text forms use the same functional syntax the parser reads, so every
// printed item parses back to an equal structure.
std::string to_string(const AtomicRole& r);
std::string to_string(const RoleExpr& u);
std::string to_string(const Concept& c);
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Rule& r);
std::string to_string(const Axiom& a);
std::string to_string(const Query& q);

void write_kb(std::ostream& out, const KnowledgeBase& kb);
std::string to_string(const KnowledgeBase& kb);

}  // namespace domino
