#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "itlab/construct.hpp"
#include "itlab/eta.hpp"
#include "itlab/structure.hpp"

namespace itlab {

using Json = nlohmann::ordered_json;

// Vertex and block ids are 1-based in every document, as in .itp files.

Json certificate_to_json(const NoItCertificate& cert);
/// Throws ParseError on malformed documents.
CertificatePtr certificate_from_json(const Json& j);

/// {rule, value, edge?, children}; value is a number or "inf".
Json trace_to_json(const ResolvedTrace& trace);

Json basic_partition_to_json(const BasicPartition& bp);
BasicPartition basic_partition_from_json(const Json& j);

Json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const Json& j);

} // namespace itlab
