int fallthrough(int k, int v) {
  int acc = v;
  switch (k) {
  case 1:
    acc += 1;
  case 2:
    acc += 2;
    break;
  case 3: {
    int t = acc * 3;
    acc = t;
    break;
  }
  default:
    acc = 0;
  }
  return acc;
}
