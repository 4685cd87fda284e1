#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "tropid/csr.hpp"
#include "tropid/identities.hpp"
#include "tropid/matrix.hpp"
#include "tropid/ranks.hpp"
#include "tropid/words.hpp"

namespace tropid {

using Json = nlohmann::ordered_json;

/// Throws std::runtime_error naming the file on read or parse failure.
Json read_json(const std::filesystem::path& path);
/// Plain-text word file ("abba" or "a^2 b^2").
Word read_word(const std::filesystem::path& path);

/// Scalars are exact strings ("3", "-2/3", "-inf"); integers are also
/// accepted as JSON numbers on input.
Json to_json(const TropScalar& x);
TropScalar scalar_from_json(const Json& j);

/// {"rows": r, "cols": c, "entries": [[...], ...]}; a bare array of rows
/// is also accepted on input.
Json to_json(const TropMatrix& a);
TropMatrix matrix_from_json(const Json& j);
TropMatrix read_matrix(const std::filesystem::path& path);

Json to_json(const RankReport& r);
Json to_json(const RankOneTerm& t);
Json to_json(const CsrMismatch& m);
Json to_json(const FactorCertificate& c);
Json to_json(const SingularPowerDecomposition& d);

Json to_json(const Identity& id);
/// {"u": ..., "v": ..., "monoid": optional}.
Identity identity_from_json(const Json& j);
Json to_json(const Counterexample& c);
Json to_json(const ExactResult& r);
Json to_json(const Separator& s);
Json to_json(const LengthReport& r);
LengthParams length_params_from_json(const Json& j);

}  // namespace tropid
