#pragma once

// Well-known vocabulary IRIs used across the library.

namespace n3::vocab {

inline constexpr const char* rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* owl_ns = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* xsd_ns = "http://www.w3.org/2001/XMLSchema#";

inline constexpr const char* log_ns = "http://www.w3.org/2000/10/swap/log#";
inline constexpr const char* math_ns = "http://www.w3.org/2000/10/swap/math#";
inline constexpr const char* string_ns = "http://www.w3.org/2000/10/swap/string#";
inline constexpr const char* list_ns = "http://www.w3.org/2000/10/swap/list#";
inline constexpr const char* time_ns = "http://www.w3.org/2000/10/swap/time#";
inline constexpr const char* os_ns = "http://www.w3.org/2000/10/swap/os#";
inline constexpr const char* crypto_ns = "http://www.w3.org/2000/10/swap/crypto#";

// Namespace used when a serializer has to mint IRIs for quantified variables.
inline constexpr const char* var_ns = "http://www.w3.org/2000/10/swap/var#";

inline constexpr const char* rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* rdf_first = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
inline constexpr const char* rdf_rest = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
inline constexpr const char* rdf_nil = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
inline constexpr const char* owl_same_as = "http://www.w3.org/2002/07/owl#sameAs";

inline constexpr const char* log_implies = "http://www.w3.org/2000/10/swap/log#implies";
inline constexpr const char* log_includes = "http://www.w3.org/2000/10/swap/log#includes";
inline constexpr const char* log_not_includes = "http://www.w3.org/2000/10/swap/log#notIncludes";
inline constexpr const char* log_conjunction = "http://www.w3.org/2000/10/swap/log#conjunction";
inline constexpr const char* log_conclusion = "http://www.w3.org/2000/10/swap/log#conclusion";
inline constexpr const char* log_supports = "http://www.w3.org/2000/10/swap/log#supports";
inline constexpr const char* log_semantics = "http://www.w3.org/2000/10/swap/log#semantics";
inline constexpr const char* log_content = "http://www.w3.org/2000/10/swap/log#content";
inline constexpr const char* log_parsed_as_n3 = "http://www.w3.org/2000/10/swap/log#parsedAsN3";
inline constexpr const char* log_n3_string = "http://www.w3.org/2000/10/swap/log#N3String";
inline constexpr const char* log_uri = "http://www.w3.org/2000/10/swap/log#uri";

inline constexpr const char* xsd_integer = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr const char* xsd_decimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr const char* xsd_double = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr const char* xsd_boolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr const char* xsd_string = "http://www.w3.org/2001/XMLSchema#string";

}
