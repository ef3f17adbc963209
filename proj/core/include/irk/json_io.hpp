#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "irk/group.hpp"
#include "irk/perm.hpp"

namespace irk {

using Json = nlohmann::json;

// {"n": 5, "cycles": [[1,2],[3,4,5]]} or {"n": 5, "images": [2,1,4,5,3]},
// 1-based. Both accepted everywhere; cycles form emitted by default.
Perm perm_from_json(const Json& j, unsigned expected_degree = 0);
Json perm_to_json(const Perm& p);

// {"n": 5, "generators": [perm, ...], "name": "A5"}
Group group_from_json(const Json& j);
Json group_to_json(const Group& g);

// {"n": 5, "elements": [perm, ...]} ("generators" accepted as an alias)
std::vector<Perm> perm_set_from_json(const Json& j, unsigned* degree_out);
Json perm_set_to_json(unsigned degree, const std::vector<Perm>& elems);

Json load_json_file(const std::string& path);

}  // namespace irk
