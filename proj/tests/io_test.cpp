#include <gtest/gtest.h>

#include <sstream>

#include "matgeom/errors.hpp"
#include "matgeom/io.hpp"

using namespace matgeom;

namespace {

MapTable parse(const std::string& text) {
    std::istringstream is(text);
    return read_table(is);
}

std::string identity_body(int count) {
    std::string s;
    for (int i = 0; i < count; ++i) s += std::to_string(i) + "\n";
    return s;
}

}  // namespace

TEST(TableFormat, RoundTrip) {
    const SpaceSpec spec{Field::make(4), 2, 2};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto t = to_table(random_preserver(spec, seed));
        std::stringstream ss;
        write_table(ss, t);
        EXPECT_EQ(read_table(ss), t);
    }
}

TEST(TableFormat, LayoutIsHeaderThenOneIndexPerLine) {
    const SpaceSpec spec{Field::make(3), 2, 2};
    std::ostringstream os;
    write_table(os, MapTable::identity(spec));
    EXPECT_EQ(os.str(), "3 2 2\n" + identity_body(81));
}

TEST(TableFormat, ToleratesBlankLines) {
    EXPECT_EQ(parse("3 2 2\n\n" + identity_body(81) + "\n  \n"), MapTable::identity({Field::make(3), 2, 2}));
}

TEST(TableFormat, RejectsMalformedInput) {
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("3 2\n"), ParseError);
    EXPECT_THROW(parse("6 2 2\n" + identity_body(1296)), ParseError);
    EXPECT_THROW(parse("3 2 2 7\n" + identity_body(81)), ParseError);
    EXPECT_THROW(parse("3 2 2\n" + identity_body(80)), ParseError);
    EXPECT_THROW(parse("3 2 2\n" + identity_body(82)), ParseError);
    EXPECT_THROW(parse("3 2 2\n" + identity_body(80) + "81\n"), ParseError);
    EXPECT_THROW(parse("3 2 2\n" + identity_body(80) + "x\n"), ParseError);
    EXPECT_THROW(parse("3 2 2\n" + identity_body(80) + "80 1\n"), ParseError);
    EXPECT_THROW(parse("3 2 2\n" + identity_body(80) + "0\n"), ParseError);  // not a permutation
    EXPECT_THROW(read_table_file("/nonexistent/table.txt"), ParseError);
}

TEST(DecompositionDocument, KeyOrderAndValues) {
    const auto f4 = Field::make(4);
    auto f = StandardPreserver::identity({f4, 2, 2});
    f.R = Matrix::unit(f4, 2, 2, 0, 1, 3);
    f.sigma = {f4, 1};
    f.transposed = true;
    const Json doc = to_json(f);
    EXPECT_EQ(doc.dump(),
              R"({"q":4,"m":2,"n":2,"modulus":[1,1,1],"T":[1,0,0,1],"S":[1,0,0,1],"R":[0,3,0,0],"sigma":1,"transposed":true})");
    EXPECT_EQ(preserver_from_json(doc), f);
}

TEST(DecompositionDocument, RoundTripRandom) {
    for (int q : {3, 4, 5, 8, 9})
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto f = random_preserver({Field::make(q), 3, 3}, seed);
            ASSERT_EQ(preserver_from_json(Json::parse(to_json(f).dump())), f);
        }
}

TEST(DecompositionDocument, RejectsInvalidDocuments) {
    const auto good = to_json(StandardPreserver::identity({Field::make(3), 2, 2}));
    EXPECT_THROW(preserver_from_json(Json::array()), ParseError);
    for (const char* key : {"q", "m", "T", "S", "R", "sigma", "transposed"}) {
        Json doc = good;
        doc.erase(key);
        EXPECT_THROW(preserver_from_json(doc), ParseError) << key;
    }
    Json singular = good;
    singular["T"] = {0, 0, 0, 0};
    EXPECT_THROW(preserver_from_json(singular), ParseError);
    Json bad_entry = good;
    bad_entry["R"] = {0, 0, 0, 3};
    EXPECT_THROW(preserver_from_json(bad_entry), ParseError);
    Json bad_modulus = good;
    bad_modulus["modulus"] = {2, 0, 1};
    EXPECT_THROW(preserver_from_json(bad_modulus), ParseError);
    Json bad_field = good;
    bad_field["q"] = 6;
    EXPECT_THROW(preserver_from_json(bad_field), ParseError);
}
