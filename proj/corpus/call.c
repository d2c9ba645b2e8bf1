int arr[100];
int foo(int x);

int main() {
#pragma drs
  for (int i = 0; i < 100; i++) {
    arr[i] = foo(i);
  }
}
