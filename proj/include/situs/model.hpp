#ifndef SITUS_MODEL_HPP
#define SITUS_MODEL_HPP

#include <map>
#include <memory>
#include <set>

#include "situs/situs.hpp"

namespace situs {

// Finite relational structure; relation tuples hold universe indices.
struct FiniteStructure {
    std::vector<std::string> universe;
    std::map<std::string, std::set<std::vector<int>>> relations;
    std::map<std::string, int> arities;

    int index_of(const std::string& l) const;
    void validate() const;
    static FiniteStructure linear_order(int n); // universe "1".."n", relation "<"
};

// Quantifier-free formulas in a prefix grammar:
//   formula := "(and" f f ")" | "(or" f f ")" | "(not" f ")"
//            | "(" relsym term+ ")" | "(=" term term ")"
//   term    := x<digits>  (variable, 1-based)  |  <label>  (parameter constant)
struct QFFormula {
    enum class Kind { And, Or, Not, Atom };
    Kind kind;
    std::string rel;                         // for atoms; "=" for equality
    std::vector<std::pair<int, std::string>> terms; // (var index, "") or (0, label)
    std::vector<std::shared_ptr<QFFormula>> sub;

    int arity() const; // highest variable index
    bool eval(const FiniteStructure& m, const std::vector<int>& assignment) const;
    static QFFormula parse(const std::string& text);
    std::string str() const;
};

// Sequences in M^I homogeneous for φ: one truth value over all strictly
// increasing index tuples with pairwise-distinct entries.
Subset indiscernibility_grade(const FiniteStructure& m, const QFFormula& phi, int seq_len);

// Representable sset on M with cumulative φ-homogeneity grades.
Situs stone_situs(const FiniteStructure& m, const std::vector<std::string>& params,
                  const std::vector<QFFormula>& phis, int trunc);

struct StoneQuotient {
    FiniteTopSpace topologised;
    std::vector<std::vector<std::string>> classes;      // Hausdorff quotient blocks
    std::vector<std::vector<std::string>> type_classes; // direct qf-1-type blocks
    bool match = false;
};

// Hausdorff quotient of the topologisation, compared against the direct
// quantifier-free 1-type computation over the unary formulas of Φ.
StoneQuotient stone_hausdorff_quotient(const Situs& stone, const FiniteStructure& m,
                                       const std::vector<QFFormula>& phis);

} // namespace situs

#endif
