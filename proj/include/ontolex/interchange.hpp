#pragma once
// XML interchange format for ontology snapshots.
//
//   <Ontology>
//     <Concept conceptID=":291234" area=":MostArabCountries" era=":Modern"
//              status="partial" gapFiller="false" parent=":290010">
//       <Gloss>...</Gloss>
//       <Example>...</Example>
//       <Synset>
//         <Sense ID=":26747" Term="..." area="..." era="..."
//                lexicalizationType=":MSA" pos="noun"/>
//       </Synset>
//       <Relation type="PartOf" target=":293121"/>
//       <Profile rigidity="rigid" benchmarkLevel="scientific">
//         <DistinguishingCharacteristics/> <ExampleInstance/>*
//         <IdentityCriteria/> <FormalAxiom/>* <Rationale/>
//       </Profile>
//     </Concept>
//     <Individual ID=":..." instanceOf=":..."> <Sense .../>* </Individual>
//   </Ontology>
//
// Everything beyond conceptID/area/era and the Synset/Sense elements is
// optional on input. Attribute values keep their leading ':' verbatim.

#include <string>
#include <string_view>

#include "ontolex/store.hpp"

namespace ontolex {

// Throws ParseError (with position), DuplicateIdError or
// DanglingReferenceError.
Store import_interchange(std::string_view bytes);
Store import_interchange_file(const std::string& path);

// Canonical bytes: concepts and individuals by id, senses by sense id,
// fixed attribute order, two-space indentation, trailing newline.
std::string export_interchange(const Store& store);
void export_interchange_file(const Store& store, const std::string& path);

}  // namespace ontolex
