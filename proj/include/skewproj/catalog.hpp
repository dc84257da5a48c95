#pragma once

// Built-in parameter and witness files. The same documents are shipped as
// catalog/<name>.json; the CLI accepts a catalog name wherever a file is expected.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace skewproj {

struct CatalogEntry {
    std::string name;
    std::string description;
    std::string json;
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"ex1-x", "P^3 with omega_14 = 1/2; birational to ex1-xprime but with a different point variety",
         R"({
  "name": "ex1-x",
  "n": 4,
  "generators": [],
  "omega": [
    ["1", "1", "1", "1/2"],
    ["1", "1", "1", "1"],
    ["1", "1", "1", "1"],
    ["2", "1", "1", "1"]
  ],
  "notes": "q_(123) = 1, q_(124) = q_(134) = 2. Point variety: two planes and one line. The matrix in ex1-birational-witness relates its q-torus to that of ex1-xprime."
}
)"},
        {"ex1-xprime", "P^3 birational to ex1-x; point variety is six lines",
         R"({
  "name": "ex1-xprime",
  "n": 4,
  "generators": [],
  "omega": [
    ["1", "1", "2", "1/2"],
    ["1", "1", "1", "1"],
    ["1/2", "1", "1", "1/8"],
    ["2", "1", "8", "1"]
  ],
  "notes": "q_(123) = q_(134) = 1/2, q_(124) = 2, q_(234) = 1/8. Point variety: the six coordinate lines."
}
)"},
        {"ex2-x", "P^3 birational to ex2-xprime with the same point variety, but not graded equivalent",
         R"({
  "name": "ex2-x",
  "n": 4,
  "generators": [],
  "omega": [
    ["1", "1", "1", "1/2"],
    ["1", "1", "1", "1"],
    ["1", "1", "1", "4"],
    ["2", "1", "1/4", "1"]
  ],
  "notes": "q_(123) = 1, q_(124) = 2, q_(134) = 8, q_(234) = 4. The matrix in ex2-reference-B does NOT satisfy A^T Q A = Q' against ex2-xprime (it yields q-exponents (1,2,7) instead of (0,2,1)); ex2-birational-witness is a verified replacement. Both q-forms have divisors [1] and rank 2."
}
)"},
        {"ex2-xprime", "P^3 birational to ex2-x with the same point variety, but not graded equivalent",
         R"({
  "name": "ex2-xprime",
  "n": 4,
  "generators": [],
  "omega": [
    ["1", "1", "1", "1/4"],
    ["1", "1", "1", "1"],
    ["1", "1", "1", "1/2"],
    ["4", "1", "2", "1"]
  ],
  "notes": "q_(123) = 1, q_(124) = 4, q_(134) = 2, q_(234) = 1/2."
}
)"},
        {"commutative-3", "polynomial ring in 3 variables",
         R"({
  "name": "commutative-3",
  "n": 3,
  "generators": [],
  "omega": [
    ["1", "1", "1"],
    ["auto", "1", "1"],
    ["auto", "auto", "1"]
  ]
}
)"},
        {"commutative-4", "polynomial ring in 4 variables",
         R"({
  "name": "commutative-4",
  "n": 4,
  "generators": [],
  "omega": [
    ["1", "1", "1", "1"],
    ["auto", "1", "1", "1"],
    ["auto", "auto", "1", "1"],
    ["auto", "auto", "auto", "1"]
  ]
}
)"},
        {"commutative-5", "polynomial ring in 5 variables",
         R"({
  "name": "commutative-5",
  "n": 5,
  "generators": [],
  "omega": [
    ["1", "1", "1", "1", "1"],
    ["auto", "1", "1", "1", "1"],
    ["auto", "auto", "1", "1", "1"],
    ["auto", "auto", "auto", "1", "1"],
    ["auto", "auto", "auto", "auto", "1"]
  ]
}
)"},
        {"graded-pair1-a", "constructed pair: graded-pair1-b is a scaled and permuted copy",
         R"({
  "name": "graded-pair1-a",
  "n": 4,
  "generators": [],
  "omega": [
    ["1", "2", "3", "1/2"],
    ["auto", "1", "5", "1"],
    ["auto", "auto", "1", "7"],
    ["auto", "auto", "auto", "1"]
  ]
}
)"},
        {"graded-pair1-b", "constructed pair: sigma = (3,1,4,2), m = (1,3,1/2,5) applied to graded-pair1-a",
         R"({
  "name": "graded-pair1-b",
  "n": 4,
  "generators": [],
  "omega": [
    ["1", "3/5", "3/2", "30"],
    ["5/3", "1", "10", "10/7"],
    ["2/3", "1/10", "1", "6"],
    ["1/30", "7/10", "1/6", "1"]
  ]
}
)"},
        {"graded-pair1-witness", "graded witness from graded-pair1-a to graded-pair1-b",
         R"({
  "kind": "graded",
  "sigma": [3, 1, 4, 2],
  "m": ["1", "3", "1/2", "5"]
}
)"},
        {"graded-pair2-a", "constructed symbolic pair with formal generators g, h",
         R"({
  "name": "graded-pair2-a",
  "n": 3,
  "generators": ["g", "h"],
  "omega": [
    ["1", "g", "2"],
    ["auto", "1", "3*h^-1"],
    ["auto", "auto", "1"]
  ]
}
)"},
        {"graded-pair2-b", "constructed pair: sigma = (2,3,1), m = (1,g,-1) applied to graded-pair2-a",
         R"({
  "name": "graded-pair2-b",
  "n": 3,
  "generators": ["g", "h"],
  "omega": [
    ["1", "-1/2", "-1/3*g^-1*h"],
    ["auto", "1", "1"],
    ["auto", "auto", "1"]
  ]
}
)"},
        {"graded-pair2-witness", "graded witness from graded-pair2-a to graded-pair2-b",
         R"({
  "kind": "graded",
  "sigma": [2, 3, 1],
  "m": ["1", "g", "-1"]
}
)"},
        {"ex1-birational-witness", "q-torus congruence from ex1-x to ex1-xprime",
         R"({
  "kind": "birational",
  "A": [[1, 0, 0], [0, -1, 0], [-1, 0, 1]]
}
)"},
        {"ex2-reference-B", "reference matrix B for ex2-x vs ex2-xprime; does not verify (see ex2-x notes)",
         R"({
  "kind": "birational",
  "A": [[1, 2, 0], [0, 1, 1], [0, 1, 2]]
}
)"},
        {"ex2-birational-witness", "verified q-torus congruence from ex2-x to ex2-xprime",
         R"({
  "kind": "birational",
  "A": [[-1, 1, 0], [1, 0, 0], [0, 0, 1]]
}
)"},
    };
    return entries;
}

/// Looks up "name" or "name.json".
inline const CatalogEntry* find_catalog_entry(std::string_view name) {
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json") name.remove_suffix(5);
    const auto& c = catalog();
    auto it = std::find_if(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.name == name; });
    return it == c.end() ? nullptr : &*it;
}

}  // namespace skewproj
