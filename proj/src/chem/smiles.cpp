// Copyright 2026 The funqg Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "funqg/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <utility>

#include "funqg/elements.hpp"
#include "funqg/error.hpp"
#include "funqg/log.hpp"

namespace funqg::chem {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

Token atom_token(TokenKind kind, std::size_t offset, std::string lexeme,
                 std::string element, bool aromatic) {
  Token t;
  t.kind = kind;
  t.offset = offset;
  t.lexeme = std::move(lexeme);
  t.element = std::move(element);
  t.aromatic = aromatic;
  return t;
}

// Decodes the text between '[' and ']'. `base` is the offset of the first
// character after '['.
void decode_bracket(std::string_view body, std::size_t base, Token& t) {
  std::size_t p = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorCode::kBadBracketAtom, what, base + std::min(p, body.size()));
  };

  int isotope = 0;
  while (p < body.size() && is_digit(body[p])) {
    isotope = isotope * 10 + (body[p] - '0');
    if (isotope > 999) throw fail("isotope out of range");
    ++p;
  }
  t.isotope = isotope;

  if (p >= body.size()) throw fail("missing element symbol");
  const char c0 = body[p];
  if (c0 == '*') {
    throw Error(ErrorCode::kUnsupportedFeature, "wildcard atom", base + p);
  }
  if (is_upper(c0)) {
    if (p + 1 < body.size() && is_lower(body[p + 1])) {
      std::string two{c0, body[p + 1]};
      if (atomic_number(two)) {
        t.element = two;
        p += 2;
      }
    }
    if (t.element.empty()) {
      std::string one{c0};
      if (!atomic_number(one)) throw fail("unknown element");
      t.element = one;
      p += 1;
    }
  } else if (is_lower(c0)) {
    t.aromatic = true;
    if (p + 1 < body.size()) {
      std::string two{c0, body[p + 1]};
      if (two == "se" || two == "as" || two == "te") {
        t.element = std::string{static_cast<char>(std::toupper(c0)), body[p + 1]};
        p += 2;
      }
    }
    if (t.element.empty()) {
      if (std::string_view("bcnops").find(c0) == std::string_view::npos) {
        throw fail("unknown aromatic element");
      }
      t.element = std::string{static_cast<char>(std::toupper(c0))};
      p += 1;
    }
  } else {
    throw fail("expected element symbol");
  }

  if (p < body.size() && body[p] == '@') {
    ++p;
    t.chiral = ChiralTag::kCounterClockwise;
    if (p < body.size() && body[p] == '@') {
      ++p;
      t.chiral = ChiralTag::kClockwise;
    } else if (p < body.size() && is_upper(body[p]) && body[p] != 'H') {
      throw Error(ErrorCode::kUnsupportedFeature, "extended chirality class", base + p);
    }
  }

  if (p < body.size() && body[p] == 'H') {
    ++p;
    t.hydrogens = 1;
    if (p < body.size() && is_digit(body[p])) {
      t.hydrogens = body[p] - '0';
      ++p;
    }
  }

  if (p < body.size() && (body[p] == '+' || body[p] == '-')) {
    const char sign = body[p];
    const int unit = sign == '+' ? 1 : -1;
    ++p;
    int magnitude = 1;
    if (p < body.size() && is_digit(body[p])) {
      magnitude = 0;
      while (p < body.size() && is_digit(body[p])) {
        magnitude = magnitude * 10 + (body[p] - '0');
        if (magnitude > 99) break;
        ++p;
      }
    } else {
      while (p < body.size() && body[p] == sign) {
        ++magnitude;
        ++p;
      }
    }
    t.charge = unit * magnitude;
    if (t.charge < -4 || t.charge > 4) throw fail("charge outside [-4, +4]");
  }

  if (p < body.size() && body[p] == ':') {
    ++p;
    if (p >= body.size() || !is_digit(body[p])) throw fail("bad atom class");
    while (p < body.size() && is_digit(body[p])) ++p;
  }

  if (p != body.size()) throw fail("unexpected character in bracket atom");
}

BondOrder order_for_symbol(char symbol, bool both_aromatic) {
  switch (symbol) {
    case '=': return BondOrder::kDouble;
    case '#': return BondOrder::kTriple;
    case ':': return BondOrder::kAromatic;
    case '-': case '/': case '\\': return BondOrder::kSingle;
    default: return both_aromatic ? BondOrder::kAromatic : BondOrder::kSingle;
  }
}

struct PendingBond {
  char symbol = 0;
  std::size_t offset = 0;
};

struct OpenRing {
  int atom;
  PendingBond bond;
  std::size_t offset;
};

std::vector<std::vector<int>> fragments_of(const Molecule& m) {
  std::vector<int> label(m.num_atoms(), -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < m.num_atoms(); ++start) {
    if (label[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{start};
    label[start] = id;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      out[id].push_back(a);
      for (const Neighbor& n : m.neighbors(a)) {
        if (label[n.atom] < 0) {
          label[n.atom] = id;
          stack.push_back(n.atom);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

// Induced sub-molecule on `keep` (sorted), preserving relative order.
Molecule induced(const Molecule& m, const std::vector<int>& keep) {
  std::vector<int> remap(m.num_atoms(), -1);
  std::vector<Atom> atoms;
  for (int a : keep) {
    remap[a] = static_cast<int>(atoms.size());
    atoms.push_back(m.atom(a));
  }
  std::vector<Bond> bonds;
  for (const Bond& b : m.bonds()) {
    if (remap[b.begin] >= 0 && remap[b.end] >= 0) {
      Bond nb = b;
      nb.begin = remap[b.begin];
      nb.end = remap[b.end];
      bonds.push_back(nb);
    }
  }
  return Molecule(std::move(atoms), std::move(bonds), m.source_smiles());
}

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
  if (s.empty()) throw Error(ErrorCode::kEmptyInput, "empty SMILES", 0);
  std::vector<Token> out;
  int depth = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (static_cast<unsigned char>(c) > 127) {
      throw Error(ErrorCode::kUnknownCharacter, "non-ASCII byte", i);
    }
    switch (c) {
      case 'B':
      case 'C': {
        const char second = c == 'B' ? 'r' : 'l';
        if (i + 1 < s.size() && s[i + 1] == second) {
          std::string sym{c, second};
          out.push_back(atom_token(TokenKind::kOrganicAtom, i, sym, sym, false));
          i += 2;
        } else {
          out.push_back(atom_token(TokenKind::kOrganicAtom, i, std::string{c},
                                   std::string{c}, false));
          ++i;
        }
        break;
      }
      case 'N': case 'O': case 'P': case 'S': case 'F': case 'I':
        out.push_back(atom_token(TokenKind::kOrganicAtom, i, std::string{c},
                                 std::string{c}, false));
        ++i;
        break;
      case 'b': case 'c': case 'n': case 'o': case 'p': case 's':
        out.push_back(atom_token(TokenKind::kOrganicAtom, i, std::string{c},
                                 std::string{static_cast<char>(std::toupper(c))}, true));
        ++i;
        break;
      case '[': {
        const std::size_t close = s.find(']', i + 1);
        if (close == std::string_view::npos) {
          throw Error(ErrorCode::kUnterminatedBracket, "missing ']'", i);
        }
        Token t = atom_token(TokenKind::kBracketAtom, i,
                             std::string(s.substr(i, close - i + 1)), {}, false);
        decode_bracket(s.substr(i + 1, close - i - 1), i + 1, t);
        out.push_back(std::move(t));
        i = close + 1;
        break;
      }
      case '-': case '=': case '#': case ':': case '/': case '\\': {
        Token t;
        t.kind = TokenKind::kBond;
        t.offset = i;
        t.lexeme = std::string{c};
        t.bond_symbol = c;
        out.push_back(std::move(t));
        ++i;
        break;
      }
      case '$':
        throw Error(ErrorCode::kUnsupportedFeature, "quadruple bond", i);
      case '*':
        throw Error(ErrorCode::kUnsupportedFeature, "wildcard atom", i);
      case '.': {
        Token t;
        t.kind = TokenKind::kDot;
        t.offset = i;
        t.lexeme = ".";
        out.push_back(std::move(t));
        ++i;
        break;
      }
      case '(':
      case ')': {
        if (c == '(') {
          ++depth;
        } else if (--depth < 0) {
          throw Error(ErrorCode::kUnterminatedBranch, "')' without matching '('", i);
        }
        Token t;
        t.kind = c == '(' ? TokenKind::kBranchOpen : TokenKind::kBranchClose;
        t.offset = i;
        t.lexeme = std::string{c};
        out.push_back(std::move(t));
        ++i;
        break;
      }
      case '%': {
        if (i + 2 >= s.size() || !is_digit(s[i + 1]) || !is_digit(s[i + 2])) {
          throw Error(ErrorCode::kBadRingDigit, "'%' must be followed by two digits", i);
        }
        Token t;
        t.kind = TokenKind::kRingClosure;
        t.offset = i;
        t.lexeme = std::string(s.substr(i, 3));
        t.ring_number = (s[i + 1] - '0') * 10 + (s[i + 2] - '0');
        out.push_back(std::move(t));
        i += 3;
        break;
      }
      default:
        if (is_digit(c)) {
          Token t;
          t.kind = TokenKind::kRingClosure;
          t.offset = i;
          t.lexeme = std::string{c};
          t.ring_number = c - '0';
          out.push_back(std::move(t));
          ++i;
          break;
        }
        throw Error(ErrorCode::kUnknownCharacter, std::string("'") + c + "'", i);
    }
  }
  if (depth != 0) {
    throw Error(ErrorCode::kUnterminatedBranch, "unclosed '('", s.size());
  }
  return out;
}

Molecule parse(const std::vector<Token>& tokens, std::string source_smiles) {
  std::vector<Atom> atoms;
  std::vector<std::size_t> atom_offset;
  std::vector<Bond> bonds;
  std::vector<int> branch_stack;
  std::map<int, OpenRing> rings;
  std::optional<PendingBond> pending;
  int prev = -1;
  const std::size_t end_offset = source_smiles.size();

  auto add_bond = [&](int a, int b, const std::optional<PendingBond>& sym,
                      std::size_t offset, bool ring_closure) {
    if (a == b || std::any_of(bonds.begin(), bonds.end(), [&](const Bond& x) {
          return (x.begin == a && x.end == b) || (x.begin == b && x.end == a);
        })) {
      throw Error(ErrorCode::kBadRingDigit, "ring closure duplicates an existing bond",
                  offset);
    }
    const bool both_aromatic = atoms[a].aromatic && atoms[b].aromatic;
    Bond bond;
    bond.begin = a;
    bond.end = b;
    bond.order = order_for_symbol(sym ? sym->symbol : 0, both_aromatic);
    if (bond.order == BondOrder::kAromatic && !both_aromatic) {
      throw Error(ErrorCode::kUnsupportedFeature,
                  "aromatic bond between non-aromatic atoms", sym ? sym->offset : offset);
    }
    if (sym && !ring_closure && (sym->symbol == '/' || sym->symbol == '\\')) {
      bond.direction = sym->symbol;
    }
    bonds.push_back(bond);
  };

  for (const Token& t : tokens) {
    switch (t.kind) {
      case TokenKind::kOrganicAtom:
      case TokenKind::kBracketAtom: {
        Atom atom;
        atom.element = t.element;
        atom.atomic_number = atomic_number(t.element).value_or(0);
        atom.aromatic = t.aromatic;
        atom.formal_charge = t.charge;
        atom.isotope = t.isotope;
        atom.chiral_tag = t.chiral;
        if (t.kind == TokenKind::kBracketAtom) atom.explicit_h = t.hydrogens;
        atoms.push_back(std::move(atom));
        atom_offset.push_back(t.offset);
        const int idx = static_cast<int>(atoms.size()) - 1;
        if (prev >= 0) {
          add_bond(prev, idx, pending, t.offset, false);
        } else if (pending) {
          throw Error(ErrorCode::kDanglingBond, "bond without a preceding atom",
                      pending->offset);
        }
        pending.reset();
        prev = idx;
        break;
      }
      case TokenKind::kBond:
        if (prev < 0 || pending) {
          throw Error(ErrorCode::kDanglingBond, "bond symbol not between two atoms",
                      t.offset);
        }
        pending = PendingBond{t.bond_symbol, t.offset};
        break;
      case TokenKind::kRingClosure: {
        if (prev < 0) {
          throw Error(ErrorCode::kBadRingDigit, "ring closure before any atom", t.offset);
        }
        auto it = rings.find(t.ring_number);
        if (it == rings.end()) {
          rings.emplace(t.ring_number, OpenRing{prev, pending.value_or(PendingBond{}),
                                                t.offset});
        } else {
          const OpenRing& open = it->second;
          std::optional<PendingBond> sym;
          if (open.bond.symbol != 0) sym = open.bond;
          if (pending) {
            if (sym && sym->symbol != pending->symbol &&
                !((sym->symbol == '/' || sym->symbol == '\\') &&
                  (pending->symbol == '/' || pending->symbol == '\\'))) {
              throw Error(ErrorCode::kBadRingDigit, "conflicting ring-closure bond orders",
                          t.offset);
            }
            sym = pending;
          }
          add_bond(open.atom, prev, sym, t.offset, true);
          rings.erase(it);
        }
        pending.reset();
        break;
      }
      case TokenKind::kBranchOpen:
        if (prev < 0 || pending) {
          throw Error(ErrorCode::kDanglingBond, "branch must follow an atom", t.offset);
        }
        branch_stack.push_back(prev);
        break;
      case TokenKind::kBranchClose:
        if (pending) {
          throw Error(ErrorCode::kDanglingBond, "bond symbol before ')'", pending->offset);
        }
        if (branch_stack.empty()) {
          throw Error(ErrorCode::kUnterminatedBranch, "')' without matching '('", t.offset);
        }
        prev = branch_stack.back();
        branch_stack.pop_back();
        break;
      case TokenKind::kDot:
        if (pending) {
          throw Error(ErrorCode::kDanglingBond, "bond symbol before '.'", pending->offset);
        }
        prev = -1;
        break;
    }
  }
  if (pending) {
    throw Error(ErrorCode::kDanglingBond, "trailing bond symbol", pending->offset);
  }
  if (!rings.empty()) {
    const auto& [digit, open] = *rings.begin();
    throw Error(ErrorCode::kUnclosedRing, "ring " + std::to_string(digit) + " never closed",
                open.offset);
  }
  if (!branch_stack.empty()) {
    throw Error(ErrorCode::kUnterminatedBranch, "unclosed '('", end_offset);
  }
  if (atoms.empty()) throw Error(ErrorCode::kEmptyInput, "no atoms", 0);

  // Fold neutral explicit hydrogens into their heavy neighbour.
  std::vector<int> degree(atoms.size(), 0);
  for (const Bond& b : bonds) {
    ++degree[b.begin];
    ++degree[b.end];
  }
  std::vector<bool> drop(atoms.size(), false);
  for (const Bond& b : bonds) {
    for (auto [h, heavy] : {std::pair{b.begin, b.end}, std::pair{b.end, b.begin}}) {
      const Atom& ha = atoms[h];
      if (ha.atomic_number == 1 && ha.formal_charge == 0 && degree[h] == 1 &&
          b.order == BondOrder::kSingle && atoms[heavy].atomic_number != 1 &&
          ha.explicit_h.value_or(0) == 0) {
        drop[h] = true;
        ++atoms[heavy].attached_h;
      }
    }
  }
  std::vector<int> remap(atoms.size(), -1);
  std::vector<Atom> kept;
  std::vector<std::size_t> kept_offset;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    if (drop[a]) continue;
    remap[a] = static_cast<int>(kept.size());
    kept.push_back(std::move(atoms[a]));
    kept_offset.push_back(atom_offset[a]);
  }
  std::vector<Bond> kept_bonds;
  for (Bond b : bonds) {
    if (drop[b.begin] || drop[b.end]) continue;
    b.begin = remap[b.begin];
    b.end = remap[b.end];
    kept_bonds.push_back(b);
  }

  Molecule mol(std::move(kept), std::move(kept_bonds), std::move(source_smiles));

  for (int a = 0; a < mol.num_atoms(); ++a) {
    const Atom& atom = mol.atom(a);
    const auto limit = max_valence(atom.atomic_number);
    if (!limit) continue;
    int used = atom.explicit_h.value_or(0) + atom.attached_h;
    for (const Neighbor& n : mol.neighbors(a)) {
      used += valence_contribution(mol.bond(n.bond).order);
    }
    if (used > *limit + std::abs(atom.formal_charge)) {
      throw Error(ErrorCode::kValenceImpossible,
                  atom.element + " with total bond order " + std::to_string(used),
                  kept_offset[a]);
    }
  }
  return mol;
}

Molecule perceive_rings(Molecule m) {
  const int n = m.num_atoms();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> bridge(m.num_bonds(), false);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto nbrs = m.neighbors(f.atom);
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.parent_bond) continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({nb.atom, nb.bond, 0});
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          const int parent = stack.back().atom;
          low[parent] = std::min(low[parent], low[done.atom]);
          if (low[done.atom] > disc[parent]) bridge[done.parent_bond] = true;
        }
      }
    }
  }

  for (Atom& a : m.atoms()) a.in_ring = false;
  for (int b = 0; b < m.num_bonds(); ++b) {
    Bond& bond = m.bonds()[b];
    bond.in_ring = !bridge[b];
    if (bond.in_ring) {
      m.atoms()[bond.begin].in_ring = true;
      m.atoms()[bond.end].in_ring = true;
    } else if (bond.order == BondOrder::kAromatic) {
      bond.order = BondOrder::kSingle;
    }
  }
  return m;
}

Molecule assign_implicit_hydrogens(Molecule m) {
  for (int a = 0; a < m.num_atoms(); ++a) {
    Atom& atom = m.atoms()[a];
    if (atom.explicit_h) {
      atom.implicit_h = *atom.explicit_h;
      continue;
    }
    const auto valence = default_valence(atom.atomic_number);
    if (!valence) {
      atom.implicit_h = 0;
      continue;
    }
    int used = atom.attached_h + (atom.aromatic ? 1 : 0);
    for (const Neighbor& n : m.neighbors(a)) {
      used += valence_contribution(m.bond(n.bond).order);
    }
    atom.implicit_h = std::max(0, *valence - used);
  }
  return m;
}

Molecule perceive_hybridization(Molecule m) {
  for (int a = 0; a < m.num_atoms(); ++a) {
    int doubles = 0;
    bool triple = false;
    for (const Neighbor& n : m.neighbors(a)) {
      const BondOrder o = m.bond(n.bond).order;
      doubles += o == BondOrder::kDouble;
      triple = triple || o == BondOrder::kTriple;
    }
    Atom& atom = m.atoms()[a];
    if (triple || doubles >= 2) {
      atom.hybridization = Hybridization::kSP;
    } else if (doubles == 1 || atom.aromatic) {
      atom.hybridization = Hybridization::kSP2;
    } else {
      switch (atom.atomic_number) {
        case 5: case 6: case 7: case 8: case 9: case 14:
        case 15: case 16: case 17: case 35: case 53:
          atom.hybridization = Hybridization::kSP3;
          break;
        default:
          atom.hybridization = Hybridization::kOther;
      }
    }
  }
  return m;
}

Molecule perceive_bond_flags(Molecule m) {
  std::vector<bool> unsaturated(m.num_atoms(), false);
  for (const Bond& b : m.bonds()) {
    if (b.order != BondOrder::kSingle) {
      unsaturated[b.begin] = true;
      unsaturated[b.end] = true;
    }
  }
  for (Bond& b : m.bonds()) {
    b.conjugated = b.order == BondOrder::kAromatic ||
                   (unsaturated[b.begin] && unsaturated[b.end]);
    b.stereo = BondStereo::kNone;
  }

  // Orientation of the marker on `bond` as seen from `center`, normalised to
  // "written before the double bond" reading.
  auto marker_up = [&](const Bond& bond, int center, bool left_side) -> std::optional<bool> {
    if (bond.direction == 0) return std::nullopt;
    const bool slash = bond.direction == '/';
    // On the left side the neighbour is normally written before the centre;
    // on the right side after it. Otherwise the marker reads reversed.
    const bool canonical = left_side ? bond.end == center : bond.begin == center;
    return canonical ? slash : !slash;
  };

  for (int d = 0; d < m.num_bonds(); ++d) {
    const Bond& dbl = m.bond(d);
    if (dbl.order != BondOrder::kDouble) continue;
    std::optional<bool> left, right;
    for (const Neighbor& n : m.neighbors(dbl.begin)) {
      if (n.bond == d || left) continue;
      left = marker_up(m.bond(n.bond), dbl.begin, true);
    }
    for (const Neighbor& n : m.neighbors(dbl.end)) {
      if (n.bond == d || right) continue;
      right = marker_up(m.bond(n.bond), dbl.end, false);
    }
    if (left && right) {
      m.bonds()[d].stereo = *left == *right ? BondStereo::kTrans : BondStereo::kCis;
    }
  }
  return m;
}

int count_fragments(const Molecule& m) {
  return static_cast<int>(fragments_of(m).size());
}

Molecule keep_largest_fragment(const Molecule& m) {
  const auto frags = fragments_of(m);
  if (frags.size() <= 1) return m;
  std::size_t best = 0;
  auto heavy = [&](const std::vector<int>& f) {
    return std::count_if(f.begin(), f.end(),
                         [&](int a) { return m.atom(a).atomic_number != 1; });
  };
  for (std::size_t i = 1; i < frags.size(); ++i) {
    if (heavy(frags[i]) > heavy(frags[best])) best = i;
  }
  return induced(m, frags[best]);
}

Molecule read_smiles(std::string_view smiles, const ReadOptions& options) {
  Molecule m = parse(tokenize(smiles), std::string(smiles));
  if (count_fragments(m) > 1) {
    if (options.fragments == FragmentPolicy::kReject) {
      throw Error(ErrorCode::kUnsupportedFeature, "multi-fragment SMILES");
    }
    log_warning("keeping largest fragment of " + std::string(smiles));
    m = keep_largest_fragment(m);
  }
  m = perceive_rings(std::move(m));
  m = assign_implicit_hydrogens(std::move(m));
  m = perceive_hybridization(std::move(m));
  m = perceive_bond_flags(std::move(m));
  return m;
}

}  // namespace funqg::chem
