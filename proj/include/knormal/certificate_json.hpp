/*
   Copyright 2026 the knormal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// JSON form of a certificate: integers only.  Field values are label vectors
// over the deterministic base tower for (p, m), constant coordinate first, so
// (q, p, m) pin their meaning exactly.

#include <cstdint>
#include <string>
#include <vector>

#include "knormal/base.hpp"
#include "knormal/search.hpp"

#include "json.hpp"

namespace knormal {

using ordered_json = nlohmann::ordered_json;

inline ordered_json certificate_to_json(const Certificate& c) {
    ordered_json j;
    j["q"] = c.q.q;
    j["p"] = c.q.p;
    j["m"] = c.q.m;
    j["modulus"] = c.modulus;
    j["normal_seed"] = c.normal_seed;
    j["f"] = c.f;
    j["translate"] = c.translate;
    j["element"] = c.element;
    return j;
}

inline Certificate certificate_from_json(const ordered_json& j) {
    for (const char* key : {"q", "p", "m", "modulus", "normal_seed", "f", "translate", "element"})
        if (!j.contains(key)) throw domain_error(std::string("certificate: missing field '") + key + "'");
    Certificate c;
    try {
        c.q.q = j.at("q").get<std::uint64_t>();
        c.q.p = j.at("p").get<std::uint64_t>();
        c.q.m = j.at("m").get<unsigned>();
        c.modulus = j.at("modulus").get<std::vector<std::uint64_t>>();
        c.normal_seed = j.at("normal_seed").get<std::vector<std::uint64_t>>();
        c.f = j.at("f").get<std::vector<std::uint64_t>>();
        c.translate = j.at("translate").get<std::vector<std::uint64_t>>();
        c.element = j.at("element").get<std::vector<std::uint64_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("certificate: ") + e.what());
    }
    return c;
}

}  // namespace knormal
