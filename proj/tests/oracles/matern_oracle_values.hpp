#pragma once

// Generated by tests/oracles/bessel_k_mpmath.py; do not edit.

namespace scp::oracle {

struct BesselKValue {
  double nu;
  double x;
  double value;
};

inline constexpr BesselKValue kBesselK[] = {
    {0.3, 1e-6, 116.1646306062691316344786},
    {0.3, 0.01, 6.890102638292769774201804},
    {0.3, 0.5, 0.9764741243817879210231353},
    {0.3, 1.9, 0.1313794252790650238702576},
    {0.3, 2.1, 0.1026020704345664252778339},
    {0.3, 5, 0.003721669328873425499272851},
    {0.3, 20, 5.753862518358737507603123e-10},
    {0.3, 80, 2.52653185592997505615687e-36},
    {0.35, 1e-6, 204.2620847153723847487571},
    {0.35, 0.01, 7.822928077491686986011393},
    {0.35, 0.5, 0.9958608813955168218269292},
    {0.35, 1.9, 0.1323053311705778378215513},
    {0.35, 2.1, 0.1032660124051292695914989},
    {0.35, 5, 0.003732767926731442322062426},
    {0.35, 20, 5.758428154455444383450727e-10},
    {0.35, 80, 2.527041942898341787691098e-36},
    {0.7, 1e-6, 16710.29838283051248425245},
    {0.7, 0.01, 26.4338784658292531924806},
    {0.7, 0.5, 1.2384579270729807306605},
    {0.7, 1.9, 0.1431954699581014482575575},
    {0.7, 2.1, 0.1110515805827557328772562},
    {0.7, 5, 0.003860478504703798397534523},
    {0.7, 20, 5.810303883280160696232212e-10},
    {0.7, 80, 2.532816991281797009513809e-36},
    {1.05, 1e-6, 2010894.834749066778138149},
    {1.05, 0.01, 126.8531325688496662398289},
    {1.05, 0.5, 1.753545978901748875739084},
    {1.05, 1.9, 0.1631702783501587267413775},
    {1.05, 2.1, 0.1252287091679972689582972},
    {1.05, 5, 0.004082616095224141562994881},
    {1.05, 20, 5.897788022256563835284352e-10},
    {1.05, 80, 2.542471295381351656735779e-36},
    {2.0, 1e-6, 1999999999999.500000000002},
    {2.0, 0.01, 19999.50006838941062357304},
    {2.0, 0.5, 7.550183551240869436567706},
    {2.0, 1.9, 0.2969092982578028592053814},
    {2.0, 2.1, 0.2176850852075935273430204},
    {2.0, 5, 0.00530894371222345995808127},
    {2.0, 20, 6.32954361229222811048173e-10},
    {2.0, 80, 2.588641170693501065459801e-36},
    {3.3, 1e-6, 833797244399850014327.781},
    {3.3, 0.01, 52608477.6841524726510286},
    {3.3, 0.5, 126.6990425843246542341956},
    {3.3, 1.9, 1.114620923591149494560252},
    {3.3, 2.1, 0.7457902302491436952150371},
    {3.3, 5, 0.00979152111621442368122106},
    {3.3, 20, 7.485197438842477040570687e-10},
    {3.3, 80, 2.701810174592746514882181e-36},
};

struct MaternValue {
  double distance;
  double range;
  double smoothness;
  double rho;
};

inline constexpr MaternValue kMatern[] = {
    {0.1, 0.1, 0.7, 0.406181840375756940017175},
    {0.001, 0.1, 0.7, 0.9976142243435483353055862},
    {0.05, 0.1, 0.7, 0.6720179816547904712540972},
    {0.2, 0.1, 0.7, 0.1382806971392070223847231},
    {0.5, 0.1, 0.7, 0.004659343044852559587660206},
    {1.0, 0.1, 0.7, 0.00001429811766735618947955105},
};

// rho(d; range = 1, kappa = 0.7) at 200 log-spaced d in [1e-6, 50].
inline constexpr MaternValue kMaternSweep07[] = {
    {1e-06, 1.0, 0.7, 0.9999999937154412174525958},
    {1.0931714767741032e-06, 1.0, 0.7, 0.999999992880754419718147},
    {1.1950238776324735e-06, 1.0, 0.7, 0.9999999919352127941807834},
    {1.3063660170918063e-06, 1.0, 0.7, 0.9999999908640945817252272},
    {1.4280820681117532e-06, 1.0, 0.7, 0.9999999896507231137457213},
    {1.5611385833523406e-06, 1.0, 0.7, 0.9999999882762072522689755},
    {1.7065921706123094e-06, 1.0, 0.7, 0.9999999867191473739778374},
    {1.8655978833993805e-06, 1.0, 0.7, 0.999999984955302325426353},
    {2.039418393262342e-06, 1.0, 0.7, 0.9999999829572121701360793},
    {2.229434016722863e-06, 1.0, 0.7, 0.999999980693770861241503},
    {2.4371536764313526e-06, 1.0, 0.7, 0.9999999781297421952568752},
    {2.6642268835898967e-06, 1.0, 0.7, 0.9999999752252115213057927},
    {2.912456836795234e-06, 1.0, 0.7, 0.9999999719349646821319228},
    {3.183814741320279e-06, 1.0, 0.7, 0.9999999682077845329313713},
    {3.4804554625442487e-06, 1.0, 0.7, 0.9999999639856541040080878},
    {3.8047346378359905e-06, 1.0, 0.7, 0.9999999592028540236329584},
    {4.1592273827767524e-06, 1.0, 0.7, 0.9999999537849401758461498},
    {4.546748740269351e-06, 1.0, 0.7, 0.9999999476475857088785069},
    {4.970376034921039e-06, 1.0, 0.7, 0.9999999406952694046247755},
    {5.433473310217243e-06, 1.0, 0.7, 0.999999932819790035627143},
    {5.939718042542859e-06, 1.0, 0.7, 0.9999999238985836364750747},
    {6.493130344188362e-06, 1.0, 0.7, 0.999999913792817559689141},
    {7.098104887243133e-06, 1.0, 0.7, 0.9999999023452317248265899},
    {7.759445801885055e-06, 1.0, 0.7, 0.9999998893776935502986833},
    {8.4824048261953e-06, 1.0, 0.7, 0.9999998746884286197564909},
    {9.272723010447695e-06, 1.0, 0.7, 0.999999858048884110459183},
    {1.0136676307048315e-05, 1.0, 0.7, 0.9999998392001763223532814},
    {1.1081125408157069e-05, 1.0, 0.7, 0.9999998178490672060446269},
    {1.21135702267541e-05, 1.0, 0.7, 0.9999997936634074963042457},
    {1.3242209453787588e-05, 1.0, 0.7, 0.9999997662669758030508383},
    {1.4476005664348968e-05, 1.0, 0.7, 0.9999997352336336670098017},
    {1.5824756489886642e-05, 1.0, 0.7, 0.9999997000807060089212907},
    {1.7299172421639952e-05, 1.0, 0.7, 0.9999996602614844268982354},
    {1.8910961863133985e-05, 1.0, 0.7, 0.9999996151567372426812536},
    {2.0672924107140925e-05, 1.0, 0.7, 0.9999995640650948564226115},
    {2.2599050975442202e-05, 1.0, 0.7, 0.99999950619216160640285},
    {2.470463792851739e-05, 1.0, 0.7, 0.9999994406381856791965747},
    {2.7006405527486878e-05, 1.0, 0.7, 0.9999993663840963770294509},
    {2.9522632212843132e-05, 1.0, 0.7, 0.9999992822756928830076654},
    {3.227329945437243e-05, 1.0, 0.7, 0.9999991870057401879321803},
    {3.528025042490917e-05, 1.0, 0.7, 0.9999990790936956209522351},
    {3.856736345795814e-05, 1.0, 0.7, 0.9999989568627529704177416},
    {4.216074166661968e-05, 1.0, 0.7, 0.9999988184138499373674196},
    {4.60889202295901e-05, 1.0, 0.7, 0.9999986615962380067582905},
    {5.038309299030485e-05, 1.0, 0.7, 0.9999984839741610444002058},
    {5.5077360168658517e-05, 1.0, 0.7, 0.9999982827891292328627708},
    {6.02089991523916e-05, 1.0, 0.7, 0.999998054917207446600178},
    {6.581876051851065e-05, 1.0, 0.7, 0.9999977968206608183089815},
    {7.195119163546131e-05, 1.0, 0.7, 0.9999975044932139173433823},
    {7.865499041579375e-05, 1.0, 0.7, 0.9999971733980823517038004},
    {8.598339202848618e-05, 1.0, 0.7, 0.9999967983978252565087168},
    {9.399459164182689e-05, 1.0, 0.7, 0.999996373674942395839957},
    {0.00010275220655387468, 1.0, 0.7, 0.9999958926419986231067907},
    {0.00011232578138029686, 1.0, 0.7, 0.9999953478398991224819991},
    {0.00012279134031130417, 1.0, 0.7, 0.9999947308227588296766754},
    {0.00013423199082317986, 1.0, 0.7, 0.9999940320276060443127885},
    {0.00014673858363850337, 1.0, 0.7, 0.9999932406269305027029435},
    {0.000160410434175843, 1.0, 0.7, 0.9999923443618267062368647},
    {0.00017535611121798135, 1.0, 0.7, 0.9999913293531903011682484},
    {0.00019169429906152455, 1.0, 0.7, 0.9999901798880945101874902},
    {0.00020955473999426338, 1.0, 0.7, 0.9999888781781002236297234},
    {0.0002290792645845421, 1.0, 0.7, 0.9999874040858319715765414},
    {0.0002504229179642094, 1.0, 0.7, 0.9999857348156765553755018},
    {0.00027375519104901486, 1.0, 0.7, 0.9999838445639248113767668},
    {0.00029926136647362835, 1.0, 0.7, 0.9999817041230721728889057},
    {0.0003271439899294124, 1.0, 0.7, 0.9999792804343118230700325},
    {0.00035762447858890805, 1.0, 0.7, 0.9999765360814856919680515},
    {0.00039094487938960525, 1.0, 0.7, 0.9999734287188925952675423},
    {0.00042736979113960845, 1.0, 0.7, 0.9999699104243774101316121},
    {0.00046718846570872576, 1.0, 0.7, 0.9999659269680268846365131},
    {0.0005107171049906352, 1.0, 0.7, 0.9999614169855614558949024},
    {0.0005583013718764074, 1.0, 0.7, 0.9999563110441215401958283},
    {0.00061031913517914, 1.0, 0.7, 0.9999505305865824624032396},
    {0.0006671834703072739, 1.0, 0.7, 0.9999439867387736965586919},
    {0.0007293459395150737, 1.0, 0.7, 0.9999365789620022458145359},
    {0.0007973001777788889, 1.0, 0.7, 0.9999281935310610888841616},
    {0.0008715858127748029, 1.0, 0.7, 0.9999187018154131529158622},
    {0.0009527927500863882, 1.0, 0.7, 0.9999079583384476792616281},
    {0.001041565857671596, 1.0, 0.7, 0.9998957985865742531048074},
    {0.001138610086788344, 1.0, 0.7, 0.9998820365364117092654599},
    {0.0012446960700443037, 1.0, 0.7, 0.9998664618644022874375726},
    {0.0013606662410252542, 1.0, 0.7, 0.9998488367987893423557219},
    {0.0014874415240982448, 1.0, 0.7, 0.9998288925689887867622709},
    {0.001626028647513601, 1.0, 0.7, 0.999806325401904793139164},
    {0.001777528137879441, 1.0, 0.7, 0.9997807920086288232404871},
    {0.0019431430594931901, 1.0, 0.7, 0.9997519044981525153161061},
    {0.0021241885679295198, 1.0, 0.7, 0.9997192246471490171182435},
    {0.00232210235375018, 1.0, 0.7, 0.9996822574464586426248687},
    {0.0025384560592697056, 1.0, 0.7, 0.9996404438355730104602089},
    {0.0027749677590380344, 1.0, 0.7, 0.9995931525260623172240153},
    {0.0030335156031481313, 1.0, 0.7, 0.9995396708034443444414265},
    {0.0033161527317107273, 1.0, 0.7, 0.9994791941843593422535871},
    {0.0036251235789326918, 1.0, 0.7, 0.9994108147919983256286996},
    {0.003962881696270473, 1.0, 0.7, 0.9993335082974396624403333},
    {0.004332109236193056, 1.0, 0.7, 0.9992461192577883766589901},
    {0.004735738251275895, 1.0, 0.7, 0.9991473446636977203044898},
    {0.005176973977762879, 1.0, 0.7, 0.9990357154889058361660486},
    {0.005659320288492149, 1.0, 0.7, 0.9989095760127783995561109},
    {0.006186607517308607, 1.0, 0.7, 0.9987670606634682543458784},
    {0.006763022875918017, 1.0, 0.7, 0.9986060681041711483103386},
    {0.007393143704724341, 1.0, 0.7, 0.99842423225809728198837},
    {0.008081973821696672, 1.0, 0.7, 0.9982188899392673066463986},
    {0.008834983257913794, 1.0, 0.7, 0.9979870447262209028015351},
    {0.0096581516953281, 1.0, 0.7, 0.9977253266844238218154724},
    {0.010558015951690126, 1.0, 0.7, 0.9974299475109111956963481},
    {0.011541721889713632, 1.0, 0.7, 0.9970966506419830268661741},
    {0.012617081162694244, 1.0, 0.7, 0.9967206558322135085796459},
    {0.013792633247201185, 1.0, 0.7, 0.9962965976815003475834401},
    {0.015077713255446514, 1.0, 0.7, 0.9958184575574719487593301},
    {0.016482526065832937, 1.0, 0.7, 0.9952794883347116993925722},
    {0.01801822736035424, 1.0, 0.7, 0.9946721313517526036216393},
    {0.019697012212369996, 1.0, 0.7, 0.9939879249739037167483897},
    {0.02153221192823405, 1.0, 0.7, 0.9932174041475024628544007},
    {0.023538399911800578, 1.0, 0.7, 0.9923499903426068679418662},
    {0.025731507392482457, 1.0, 0.7, 0.9913738713106826946214376},
    {0.0281289499358638, 1.0, 0.7, 0.9902758701366394096214901},
    {0.030749765741493046, 1.0, 0.7, 0.9890413031468135864922908},
    {0.033614766826085676, 1.0, 0.7, 0.9876538263535861948924802},
    {0.03674670429268921, 1.0, 0.7, 0.986095270282028181721674},
    {0.040170448998220344, 1.0, 0.7, 0.9843454632446261405345888},
    {0.04391318905406332, 1.0, 0.7, 0.9823820434187971583205938},
    {0.04800464572809079, 1.0, 0.7, 0.9801802604524826089709738},
    {0.05247730946259465, 1.0, 0.7, 0.9777127677915268972808145},
    {0.05736669788235621, 1.0, 0.7, 0.9749494075067536905308532},
    {0.06271163784170915, 1.0, 0.7, 0.9718569901186055134014584},
    {0.06855457375034392, 1.0, 0.7, 0.9683990727946823694268762},
    {0.07494190462628264, 1.0, 0.7, 0.9645357403536943668593837},
    {0.08192435255257738, 1.0, 0.7, 0.960223394772168282338698},
    {0.08955736546366329, 1.0, 0.7, 0.9554145603813338366971966},
    {0.09790155745991086, 1.0, 0.7, 0.9500577136826778010290593},
    {0.10702319014693547, 1.0, 0.7, 0.9440971487192638767415843},
    {0.1169946988220011, 1.0, 0.7, 0.9374728912264161210549988},
    {0.12789526768598836, 1.0, 0.7, 0.9301206773487239025996347},
    {0.13981145864871114, 1.0, 0.7, 0.9219720155327414924979109},
    {0.15283789872095302, 1.0, 0.7, 0.9129543532447326383301987},
    {0.167078031451835, 1.0, 0.7, 0.9029913733465565316037342},
    {0.18264493837871254, 1.0, 0.7, 0.8920034481737603336519365},
    {0.19966223701277225, 1.0, 0.7, 0.8799082824265048908398893},
    {0.21826506249127325, 1.0, 0.7, 0.8666217786654013956747318},
    {0.23860114069177707, 1.0, 0.7, 0.8520591611757654953120417},
    {0.2608319613300155, 1.0, 0.7, 0.8361363948008171756064488},
    {0.2851340603570188, 1.0, 0.7, 0.8187719345094874770521588},
    {0.31170042183907853, 1.0, 0.7, 0.7998888382977793727056028},
    {0.3407420104529364, 1.0, 0.7, 0.7794172697404734271932016},
    {0.37248944676581336, 1.0, 0.7, 0.7572974062174459768217958},
    {0.4071948386037529, 1.0, 0.7, 0.7334827535626081911527724},
    {0.4451337830512571, 1.0, 0.7, 0.7079438466336832187155182},
    {0.486607554980186, 1.0, 0.7, 0.6806722871726977782166748},
    {0.5319454994871256, 1.0, 0.7, 0.6516850346507115765953684},
    {0.581507647237679, 1.0, 0.7, 0.6210288223415559910954113},
    {0.6356875734862477, 1.0, 0.7, 0.5887845201422298971839108},
    {0.6949155234749077, 1.0, 0.7, 0.555071209198328901245816},
    {0.7596618290303138, 1.0, 0.7, 0.5200496741765031558908348},
    {0.8304406434899844, 1.0, 0.7, 0.4839249618364856820886606},
    {0.9078140246171827, 1.0, 0.7, 0.4469476063006938104084656},
    {0.9923963979270076, 1.0, 0.7, 0.4094130912760833307013913},
    {1.0848594358671675, 1.0, 0.7, 0.3716591187251072167889468},
    {1.185937391599232, 1.0, 0.7, 0.3340602948206701516864091},
    {1.2964329297361603, 1.0, 0.7, 0.2970199402600077053780407},
    {1.4172235003382554, 1.0, 0.7, 0.2609588938845608808122299},
    {1.5492683067837343, 1.0, 0.7, 0.226301411661294682374403},
    {1.6936159228460892, 1.0, 0.7, 0.1934585641341143926985625},
    {1.851412619465795, 1.0, 0.7, 0.1628098882525301541386636},
    {2.0239114673396337, 1.0, 0.7, 0.1346844215555518937318537},
    {2.2124822876117096, 1.0, 0.7, 0.1093425878930935077614611},
    {2.4186225296850385, 1.0, 0.7, 0.08696064861298961131210525},
    {2.6439691625349107, 1.0, 0.7, 0.06761950778223384680436176},
    {2.890311673953477, 1.0, 0.7, 0.05129949632163598904996349},
    {3.1596062809531524, 1.0, 0.7, 0.03788231402232756775914219},
    {3.45399146417429, 1.0, 0.7, 0.02716058203806163464693493},
    {3.775804949656555, 1.0, 0.7, 0.01885451692147742112311866},
    {4.1276022728270245, 1.0, 0.7, 0.01263421597602849519068267},
    {4.512177072122463, 1.0, 0.7, 0.008145135186313847029631368},
    {4.932583273398362, 1.0, 0.7, 0.005033758328766154759676945},
    {5.392159341292127, 1.0, 0.7, 0.002970375641397876132152165},
    {5.89455479012159, 1.0, 0.7, 0.001666389569394381481542355},
    {6.443759164843082, 1.0, 0.7, 0.0008845746327763439571684147},
    {7.044133722208174, 1.0, 0.7, 0.0004420190428099927298617335},
    {7.70044606370057, 1.0, 0.7, 0.0002067488807074843523404021},
    {8.41790799527488, 1.0, 0.7, 0.00008996220098666711502276986},
    {9.202216914543172, 1.0, 0.7, 0.00003617106976361142434978668},
    {10.05960105406679, 1.0, 0.7, 0.0000133396380187930202135277},
    {10.996868940032519, 1.0, 0.7, 0.000004476175843638286785406524},
    {12.021463459066615, 1.0, 0.7, 0.000001354639698258247979102103},
    {13.14152096253377, 1.0, 0.7, 0.0000003661937932430229324510499},
    {14.365935877670875, 1.0, 0.7, 8.749761649093556599118781e-8},
    {15.70443133863554, 1.0, 0.7, 1.826759429591839705292277e-8},
    {17.16763639835372, 1.0, 0.7, 3.290810060920768397640999e-9},
    {18.767170434309183, 1.0, 0.7, 5.045314631220320483452533e-10},
    {20.515735418545056, 1.0, 0.7, 6.484987332172069221336092e-11},
    {22.42721678459767, 1.0, 0.7, 6.874306232387947023261001e-12},
    {24.51679369235159, 1.0, 0.7, 5.902638788296159392523158e-13},
    {26.801059566434006, 1.0, 0.7, 4.025623977464322731957949e-14},
    {29.298153865349366, 1.0, 0.7, 2.134359556748102279124608e-15},
    {32.027906127738866, 1.0, 0.7, 8.593273986018634249809502e-17},
    {35.011993439642644, 1.0, 0.7, 2.560745641901441105977049e-18},
    {38.27411257321936, 1.0, 0.7, 5.491780457843853402793152e-20},
    {41.84016816388448, 1.0, 0.7, 8.220279651276734196235148e-22},
    {45.73847842019041, 1.0, 0.7, 8.304897710453578703026901e-24},
    {50.0, 1.0, 0.7, 5.459439729579004151698172e-26},
};

}  // namespace scp::oracle
