#pragma once

// Reference values from tests/oracles/goldens.py (mpmath, 1024 bits).

namespace hypopq::golden {

inline constexpr const char* kBaseM0 = "105.95742775522614520358147008212291995425765483818";
inline constexpr const char* kBaseX0 = "1.2016360279810237366902582866634886530063543324013";
inline constexpr const char* kSecondX0 = "2.442695040888963407359924681001892137426645954153";

struct CoeffGolden {
  unsigned n;
  const char* a2;
  const char* b;
  const char* x;
  const char* y;
};

inline constexpr CoeffGolden kBase[] = {
    {1, "8.5197381382927781554071000414536037313871368771429", "7.9614968926524673205131910284085509549663852400026",
     "1.1281635593191339871798576950752176216330519066693", "-1.0152312230215789146164915785432182549525507885917"},
    {5, "84.614788837188778176883589240935901184411810327631", "19.518013762972620724954850495971879611039686525041",
     "0.68468042963928739162151716263854627770635319170807", "-2.1688504237707443255846338538711474796007548868179"},
    {30, "1996.8203778246249029685542576651044727735452023042", "94.159615284942989775112970997653155341023720503726",
     "0.32628195160965644177963766431982200769038717039247", "-6.4623591157447528623889807817974994209630140962202"},
};

inline constexpr const char* kSecondY1 = "-1.6386739401166443905096569227330992876374012014931";
inline constexpr const char* kSecondX1 = "2.1460044086731264234454597509401978507038599578904";

inline constexpr const char* kBaseSigma3 = "-0.61170069350904512143446027482027469337576263635209";

}  // namespace hypopq::golden
