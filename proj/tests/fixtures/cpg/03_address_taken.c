void touch(int *p);

int address_taken(int x) {
  int y = x;
  int z = 1;
  int *q = &y;
  touch(q);
  *q = z + 1;
  z = y + z;
  return y + z;
}
